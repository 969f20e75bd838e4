#include "pwmradio/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pwmradio {

SignalBuffer apply_channel(const SignalBuffer& rf, const ChannelConfig& cfg) {
    if (cfg.noise_rms < 0.0) {
        throw std::invalid_argument("noise_rms must be non-negative");
    }
    SignalBuffer out;
    out.sample_rate = rf.sample_rate;
    out.samples.resize(rf.samples.size());

    if (cfg.noise_rms == 0.0) {
        for (std::size_t i = 0; i < rf.samples.size(); ++i) {
            out.samples[i] = cfg.gain * rf.samples[i];
        }
        return out;
    }

    // Box-Muller over the raw engine output; both halves of each pair are
    // used, so the draw sequence is pinned down by the seed alone.
    std::mt19937_64 rng(cfg.seed);
    auto uniform = [&rng] {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;  // (0,1)
    };
    double spare = 0.0;
    bool have_spare = false;
    auto gaussian = [&]() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double a = 2.0 * std::numbers::pi * uniform();
        spare = r * std::sin(a);
        have_spare = true;
        return r * std::cos(a);
    };

    for (std::size_t i = 0; i < rf.samples.size(); ++i) {
        out.samples[i] = cfg.gain * rf.samples[i] + cfg.noise_rms * gaussian();
    }
    return out;
}

double optimal_antenna_length(double carrier_mhz) {
    if (carrier_mhz <= 0.0) {
        throw std::invalid_argument("carrier frequency must be positive");
    }
    return 142.6 / carrier_mhz;
}

}  // namespace pwmradio
