#pragma once

#include <cstddef>
#include <vector>

namespace pwmradio {

// Uniformly sampled real signal. The buffer models the continuous output of a
// PWM pin as a zero-order hold: each sample value is held for 1/sample_rate
// seconds, so a rectangular wave whose edges land on sample instants is
// represented exactly.
struct SignalBuffer {
    std::vector<double> samples;
    double sample_rate = 0.0;  // Hz, positive

    double duration() const {
        return sample_rate > 0.0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// Rectangular-wave generator settings. duty and phase are fractions of one
// period in [0,1]. low_level/high_level are the output rails; an RF carrier
// uses -1/+1, a logic-level modulator uses 0/1.
struct PwmConfig {
    double frequency = 0.0;  // Hz
    double duty = 0.5;       // fraction of period spent at high_level
    double phase = 0.0;      // fraction of period, [0,1)
    double low_level = -1.0;
    double high_level = 1.0;
};

// Throws std::invalid_argument when the fields violate the constraints above
// (frequency <= 0, duty outside [0,1], phase outside [0,1), or inverted rails
// with a non-degenerate duty).
void validate(const PwmConfig& cfg);

// Point-samples a rectangular wave: the sample at time t is high exactly when
// frac(t * frequency + phase) < duty, with frac() in [0,1). Equality at the
// boundary gives the low level, so duty 0 is all-low and duty 1 all-high.
//
// Throws std::invalid_argument when the config is invalid, duration <= 0, or
// sample_rate < 2 * frequency.
SignalBuffer generate_pwm(const PwmConfig& cfg, double duration, double sample_rate);

// Fourier sine coefficient of the unit-amplitude, 50%-duty, zero-mean
// rectangular wave: 0 for even n, 4/(n*pi) for odd n. n >= 1.
double rect_fourier_coefficient(int n);

// Truncated Fourier series of the square wave: the sum over k = 0..k_max of
// (4/pi) * 1/(2k+1) * sin((2k+1) * 2*pi*frequency*t). Converges to the
// ideal rectangle everywhere except the jump points, where the overshoot
// settles near 9% regardless of k_max.
//
// Throws std::invalid_argument unless the highest harmonic (2*k_max+1) *
// frequency stays at or below sample_rate / 2.
SignalBuffer synthesize_partial_sum(double frequency, int k_max, double duration,
                                    double sample_rate);

}  // namespace pwmradio
