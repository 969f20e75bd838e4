#pragma once

#include "pwmradio/signal.hpp"

namespace pwmradio {

enum class AgcMode {
    Off,
    On,  // 50 ms attack, 500 ms release
};

struct TunerConfig {
    double center = 0.0;      // Hz, where the carrier is expected
    double bandwidth = 3000;  // Hz, full passband width around center
    AgcMode agc = AgcMode::Off;
};

// AM envelope receive chain: complex mix to baseband, windowed-sinc low-pass
// (60 dB stopband, transition 10% of the cutoff) with integer predecimation,
// magnitude, mean removal, optional AGC, then rational resampling to
// audio_rate. Linear up to the magnitude, so scaling the RF scales the audio.
//
// Throws std::invalid_argument when center or audio_rate is out of range
// (center above the RF Nyquist, non-positive rates or bandwidth) or when a
// rate is not a whole number of Hz.
SignalBuffer tune_am(const SignalBuffer& rf, const TunerConfig& cfg, double audio_rate);

// Rational-ratio resampler with a 60 dB anti-alias filter. Preserves DC
// exactly and tone amplitudes to well under 3%. Equal rates are an identity.
// Rates must be positive whole numbers of Hz.
SignalBuffer resample(const SignalBuffer& audio, double out_rate);

// Demodulates rf at base and at multiple*base with the same config and
// returns the Pearson correlation of the two audio signals after each is
// scaled to unit RMS. A harmonic that carries the program correlates near 1,
// a null near 0.
double harmonic_retune_check(const SignalBuffer& rf, double base, int multiple,
                             const TunerConfig& cfg, double audio_rate);

}  // namespace pwmradio
