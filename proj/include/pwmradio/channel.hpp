#pragma once

#include <cstdint>

#include "pwmradio/signal.hpp"

namespace pwmradio {

struct ChannelConfig {
    double gain = 1.0;
    double noise_rms = 0.0;      // standard deviation of the added noise
    std::uint64_t seed = 0;
};

// gain * rf + white Gaussian noise. The noise is drawn from a fixed
// generator (mt19937_64 driving a Box-Muller transform), so the same seed
// reproduces the same sequence bit for bit. noise_rms 0 adds nothing.
// Throws std::invalid_argument when noise_rms < 0.
SignalBuffer apply_channel(const SignalBuffer& rf, const ChannelConfig& cfg);

// Quarter-wave whip length in meters for a carrier in MHz: 142.6 / f_mhz.
// Throws std::invalid_argument when f_mhz <= 0.
double optimal_antenna_length(double carrier_mhz);

}  // namespace pwmradio
