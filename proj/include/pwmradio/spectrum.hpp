#pragma once

#include <vector>

#include "pwmradio/signal.hpp"

namespace pwmradio {

enum class Window {
    Rectangular,
    Hann,
};

// Single-sided amplitude spectrum. bin_magnitudes[k] is the amplitude at
// frequency k * bin_width, normalized so a unit-amplitude sine landing on a
// bin reads 1.0 (window coherent gain compensated, interior bins doubled,
// DC and Nyquist not doubled).
struct Spectrum {
    std::vector<double> bin_magnitudes;
    double bin_width = 0.0;          // Hz per bin
    double source_sample_rate = 0.0; // Hz of the analyzed buffer
    Window window = Window::Rectangular;
};

// Amplitude spectrum of the first fft_length samples of buf.
// Throws std::invalid_argument when fft_length < 2 or exceeds the buffer.
Spectrum analyze_spectrum(const SignalBuffer& buf, std::size_t fft_length,
                          Window window = Window::Rectangular);

// Amplitude of the n-th harmonic of `fundamental` in the continuous waveform
// the buffer models (zero-order hold of the sample sequence). Reads the bin
// nearest the harmonic with parabolic interpolation across its neighbors,
// then applies the hold's sinc(pi*f/fs) rolloff. Harmonics above the source
// Nyquist are taken from their fold-back image, which the hold places there
// with exactly that attenuation, so the readout stays valid past fs/2.
//
// Throws std::invalid_argument for n < 1, fundamental <= 0, or a harmonic
// whose image falls outside the analyzed bins.
double measure_harmonic(const Spectrum& spec, double fundamental, int n);

}  // namespace pwmradio
