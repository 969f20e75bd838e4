#include "pwmradio/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace pwmradio {

namespace {

// FFTW plan creation mutates library-global state; execution does not.
std::mutex g_fftw_mutex;

// sin(x)/x with the removable singularity filled in.
double sinc(double x) {
    if (std::abs(x) < 1e-12) {
        return 1.0;
    }
    return std::sin(x) / x;
}

}  // namespace

Spectrum analyze_spectrum(const SignalBuffer& buf, std::size_t fft_length, Window window) {
    if (buf.sample_rate <= 0.0) {
        throw std::invalid_argument("buffer sample_rate must be positive");
    }
    if (fft_length < 2) {
        throw std::invalid_argument("fft_length must be at least 2");
    }
    if (fft_length > buf.samples.size()) {
        throw std::invalid_argument("fft_length exceeds the buffer length");
    }

    const std::size_t n = fft_length;
    std::vector<double> in(n);
    double window_gain = 1.0;  // mean of the window, compensated below
    if (window == Window::Hann) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w =
                0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                     static_cast<double>(n));
            in[i] = buf.samples[i] * w;
            acc += w;
        }
        window_gain = acc / static_cast<double>(n);
    } else {
        std::copy_n(buf.samples.begin(), n, in.begin());
    }

    const std::size_t bins = n / 2 + 1;
    std::vector<fftw_complex> out(bins);
    {
        std::unique_lock lock(g_fftw_mutex);
        fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(),
                                              FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
        if (plan == nullptr) {
            throw std::runtime_error("FFT planning failed");
        }
        lock.unlock();
        fftw_execute(plan);
        lock.lock();
        fftw_destroy_plan(plan);
    }

    Spectrum spec;
    spec.bin_width = buf.sample_rate / static_cast<double>(n);
    spec.source_sample_rate = buf.sample_rate;
    spec.window = window;
    spec.bin_magnitudes.resize(bins);
    const double norm = 1.0 / (static_cast<double>(n) * window_gain);
    for (std::size_t k = 0; k < bins; ++k) {
        const double mag = std::hypot(out[k][0], out[k][1]) * norm;
        const bool shared = k == 0 || (n % 2 == 0 && k == bins - 1);  // DC and Nyquist
        spec.bin_magnitudes[k] = shared ? mag : 2.0 * mag;
    }
    return spec;
}

double measure_harmonic(const Spectrum& spec, double fundamental, int n) {
    if (n < 1) {
        throw std::invalid_argument("harmonic index must be >= 1");
    }
    if (fundamental <= 0.0) {
        throw std::invalid_argument("fundamental must be positive");
    }
    if (spec.bin_magnitudes.size() < 2 || spec.bin_width <= 0.0) {
        throw std::invalid_argument("spectrum is empty");
    }
    const double fs = spec.source_sample_rate;
    const double target = fundamental * static_cast<double>(n);

    // The hold images everything above fs/2 back into the first Nyquist
    // zone, so read the harmonic from its image frequency.
    double image = std::fmod(target, fs);
    if (image > fs / 2.0) {
        image = fs - image;
    }

    const auto& mags = spec.bin_magnitudes;
    const double pos = image / spec.bin_width;
    const auto k = static_cast<std::size_t>(std::llround(pos));
    if (k >= mags.size()) {
        throw std::invalid_argument("harmonic lies outside the analyzed bins");
    }

    double value = mags[k];
    if (k > 0 && k + 1 < mags.size()) {
        const double a = mags[k - 1];
        const double b = mags[k];
        const double c = mags[k + 1];
        const double denom = a - 2.0 * b + c;
        if (std::abs(denom) > 1e-300) {
            double p = 0.5 * (a - c) / denom;
            p = std::clamp(p, -0.5, 0.5);
            value = b - 0.25 * (a - c) * p;
        }
    }

    // Amplitude of the held (continuous) waveform at the true harmonic
    // frequency, not of the sample sequence at the image.
    return value * std::abs(sinc(std::numbers::pi * target / fs));
}

}  // namespace pwmradio
