#include "pwmradio/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pwmradio {

namespace {

double frac(double x) {
    return x - std::floor(x);
}

std::size_t sample_count(double duration, double sample_rate) {
    if (duration <= 0.0) {
        throw std::invalid_argument("duration must be positive");
    }
    if (sample_rate <= 0.0) {
        throw std::invalid_argument("sample_rate must be positive");
    }
    return static_cast<std::size_t>(std::llround(duration * sample_rate));
}

}  // namespace

void validate(const PwmConfig& cfg) {
    if (cfg.frequency <= 0.0) {
        throw std::invalid_argument("PWM frequency must be positive");
    }
    if (cfg.duty < 0.0 || cfg.duty > 1.0) {
        throw std::invalid_argument("PWM duty must be within [0,1]");
    }
    if (cfg.phase < 0.0 || cfg.phase >= 1.0) {
        throw std::invalid_argument("PWM phase must be within [0,1)");
    }
    const bool degenerate = cfg.duty == 0.0 || cfg.duty == 1.0;
    if (!degenerate && !(cfg.low_level < cfg.high_level)) {
        throw std::invalid_argument("PWM low_level must be below high_level");
    }
}

SignalBuffer generate_pwm(const PwmConfig& cfg, double duration, double sample_rate) {
    validate(cfg);
    const std::size_t n = sample_count(duration, sample_rate);
    if (sample_rate < 2.0 * cfg.frequency) {
        throw std::invalid_argument("sample_rate must be at least twice the PWM frequency");
    }

    SignalBuffer buf;
    buf.sample_rate = sample_rate;
    buf.samples.resize(n);
    const double step = cfg.frequency / sample_rate;  // periods per sample
    for (std::size_t i = 0; i < n; ++i) {
        const double cycle_pos = frac(static_cast<double>(i) * step + cfg.phase);
        buf.samples[i] = cycle_pos < cfg.duty ? cfg.high_level : cfg.low_level;
    }
    return buf;
}

double rect_fourier_coefficient(int n) {
    if (n < 1) {
        throw std::invalid_argument("harmonic index must be >= 1");
    }
    if (n % 2 == 0) {
        return 0.0;
    }
    return 4.0 / (static_cast<double>(n) * std::numbers::pi);
}

SignalBuffer synthesize_partial_sum(double frequency, int k_max, double duration,
                                    double sample_rate) {
    if (frequency <= 0.0) {
        throw std::invalid_argument("frequency must be positive");
    }
    if (k_max < 0) {
        throw std::invalid_argument("k_max must be >= 0");
    }
    const double highest = (2.0 * k_max + 1.0) * frequency;
    if (highest > sample_rate / 2.0) {
        throw std::invalid_argument("harmonic " + std::to_string(2 * k_max + 1) +
                                    " exceeds the Nyquist rate");
    }
    const std::size_t n = sample_count(duration, sample_rate);

    SignalBuffer buf;
    buf.sample_rate = sample_rate;
    buf.samples.assign(n, 0.0);
    const double w = 2.0 * std::numbers::pi * frequency / sample_rate;
    for (int k = 0; k <= k_max; ++k) {
        const int m = 2 * k + 1;
        const double amp = rect_fourier_coefficient(m);
        for (std::size_t i = 0; i < n; ++i) {
            buf.samples[i] += amp * std::sin(w * m * static_cast<double>(i));
        }
    }
    return buf;
}

}  // namespace pwmradio
