#include "pwmradio/channel.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "checks.hpp"

using namespace pwmradio;

int main() {
    SignalBuffer ramp;
    ramp.sample_rate = 48000.0;
    for (int i = 0; i < 1000; ++i) {
        ramp.samples.push_back(static_cast<double>(i) / 1000.0 - 0.5);
    }

    // Noise-free path is a pure gain.
    {
        ChannelConfig cfg;
        cfg.gain = 0.375;
        cfg.noise_rms = 0.0;
        const SignalBuffer out = apply_channel(ramp, cfg);
        CHECK(out.sample_rate == ramp.sample_rate);
        CHECK(out.samples.size() == ramp.samples.size());
        bool scaled = true;
        for (std::size_t i = 0; i < out.samples.size(); ++i) {
            scaled = scaled && out.samples[i] == 0.375 * ramp.samples[i];
        }
        CHECK(scaled);
    }

    // The noise sequence is a function of the seed alone.
    {
        ChannelConfig cfg;
        cfg.noise_rms = 0.1;
        cfg.seed = 1234;
        const SignalBuffer a = apply_channel(ramp, cfg);
        const SignalBuffer b = apply_channel(ramp, cfg);
        CHECK(a.samples == b.samples);
        cfg.seed = 1235;
        const SignalBuffer c = apply_channel(ramp, cfg);
        CHECK(a.samples != c.samples);
    }

    // Noise rides on top of the scaled signal: subtracting the zero-input
    // run leaves exactly gain times the input.
    {
        ChannelConfig cfg;
        cfg.gain = 2.0;
        cfg.noise_rms = 0.3;
        cfg.seed = 77;
        const SignalBuffer noisy = apply_channel(ramp, cfg);
        SignalBuffer zeros;
        zeros.sample_rate = ramp.sample_rate;
        zeros.samples.assign(ramp.samples.size(), 0.0);
        const SignalBuffer noise_only = apply_channel(zeros, cfg);
        bool additive = true;
        for (std::size_t i = 0; i < ramp.samples.size(); ++i) {
            additive = additive &&
                       std::abs(noisy.samples[i] - noise_only.samples[i] -
                                2.0 * ramp.samples[i]) < 1e-12;
        }
        CHECK(additive);
    }

    // Sample statistics of the generator: zero mean, requested RMS, and
    // normal-looking tail fractions.
    {
        SignalBuffer zeros;
        zeros.sample_rate = 1e6;
        zeros.samples.assign(200000, 0.0);
        ChannelConfig cfg;
        cfg.noise_rms = 0.25;
        cfg.seed = 99;
        const SignalBuffer noise = apply_channel(zeros, cfg);

        double mean = 0.0;
        for (double v : noise.samples) {
            mean += v;
        }
        mean /= static_cast<double>(noise.samples.size());
        CHECK(std::abs(mean) < 0.0025);

        double var = 0.0;
        std::size_t within_1 = 0;
        std::size_t within_2 = 0;
        for (double v : noise.samples) {
            var += (v - mean) * (v - mean);
            within_1 += std::abs(v) < 0.25 ? 1 : 0;
            within_2 += std::abs(v) < 0.5 ? 1 : 0;
        }
        var /= static_cast<double>(noise.samples.size());
        CHECK_NEAR(std::sqrt(var), 0.25, 0.0025);
        const auto n = static_cast<double>(noise.samples.size());
        CHECK_NEAR(static_cast<double>(within_1) / n, 0.6827, 0.01);
        CHECK_NEAR(static_cast<double>(within_2) / n, 0.9545, 0.005);
    }

    // Quarter-wave whip rule of thumb, in meters from MHz.
    CHECK_NEAR(optimal_antenna_length(31.25), 4.5632, 1e-12);
    CHECK_NEAR(optimal_antenna_length(142.6), 1.0, 1e-12);
    CHECK_THROWS(optimal_antenna_length(0.0));
    CHECK_THROWS(optimal_antenna_length(-5.0));

    // Negative noise is rejected.
    {
        ChannelConfig cfg;
        cfg.noise_rms = -0.1;
        CHECK_THROWS(apply_channel(ramp, cfg));
    }

    if (g_failures != 0) {
        std::fprintf(stderr, "%d channel checks failed\n", g_failures);
        return 1;
    }
    std::printf("channel: all checks passed\n");
    return 0;
}
