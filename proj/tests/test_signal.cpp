#include "pwmradio/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "checks.hpp"

using namespace pwmradio;

namespace {

PwmConfig square(double freq, double duty = 0.5) {
    PwmConfig cfg;
    cfg.frequency = freq;
    cfg.duty = duty;
    return cfg;
}

double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x;
    }
    return acc / static_cast<double>(v.size());
}

// Largest |partial - ideal| over samples farther than 5% of a period from
// the nearest edge. Both buffers share the same clock.
double interior_error(const SignalBuffer& partial, const SignalBuffer& ideal, double freq) {
    double worst = 0.0;
    for (std::size_t i = 0; i < partial.samples.size(); ++i) {
        const double t = static_cast<double>(i) / partial.sample_rate;
        const double cycle = t * freq - std::floor(t * freq);
        const double to_edge = std::min({cycle, std::abs(cycle - 0.5), 1.0 - cycle});
        if (to_edge <= 0.05) {
            continue;
        }
        worst = std::max(worst, std::abs(partial.samples[i] - ideal.samples[i]));
    }
    return worst;
}

}  // namespace

int main() {
    // Eight samples of a 1 Hz square at 8 Hz: first half high, second low.
    {
        const SignalBuffer buf = generate_pwm(square(1.0), 1.0, 8.0);
        CHECK(buf.samples.size() == 8);
        const std::vector<double> expected = {1, 1, 1, 1, -1, -1, -1, -1};
        CHECK(buf.samples == expected);
    }

    // Degenerate duties: 0 never leaves the low rail, 1 never leaves the high.
    {
        const SignalBuffer low = generate_pwm(square(1000.0, 0.0), 0.01, 1e6);
        CHECK(std::all_of(low.samples.begin(), low.samples.end(),
                          [](double v) { return v == -1.0; }));
        const SignalBuffer high = generate_pwm(square(1000.0, 1.0), 0.01, 1e6);
        CHECK(std::all_of(high.samples.begin(), high.samples.end(),
                          [](double v) { return v == 1.0; }));
    }

    // Mean of a rectangle is duty*high + (1-duty)*low; 25% at -1/+1 gives -0.5.
    {
        const SignalBuffer buf = generate_pwm(square(1000.0, 0.25), 1.0, 1e6);
        CHECK_NEAR(mean(buf.samples), -0.5, 1e-3);
    }

    // A half-period phase offset flips the pattern.
    {
        PwmConfig cfg = square(1.0);
        cfg.phase = 0.5;
        const SignalBuffer buf = generate_pwm(cfg, 1.0, 8.0);
        const std::vector<double> expected = {-1, -1, -1, -1, 1, 1, 1, 1};
        CHECK(buf.samples == expected);
    }

    // Bit-exact periodicity when frequency/rate is a dyadic rational, so the
    // per-sample cycle position carries no rounding error. Non-dyadic ratios
    // can flip samples that land within one ulp of a duty edge.
    {
        const SignalBuffer buf = generate_pwm(square(250.0, 0.3), 0.5, 8000.0);
        const std::size_t period = 32;
        bool periodic = true;
        for (std::size_t i = 0; i + period < buf.samples.size(); ++i) {
            periodic = periodic && buf.samples[i] == buf.samples[i + period];
        }
        CHECK(periodic);
    }

    // Rejections: sub-Nyquist sampling, bad duration, bad config fields.
    CHECK_THROWS(generate_pwm(square(1000.0), 1.0, 1999.0));
    CHECK_THROWS(generate_pwm(square(1000.0), 0.0, 1e6));
    CHECK_THROWS(generate_pwm(square(1000.0), -1.0, 1e6));
    CHECK_THROWS(generate_pwm(square(0.0), 1.0, 1e6));
    CHECK_THROWS(generate_pwm(square(1000.0, 1.5), 1.0, 1e6));
    CHECK_THROWS(generate_pwm(square(1000.0, -0.1), 1.0, 1e6));
    {
        PwmConfig cfg = square(1000.0);
        cfg.phase = 1.0;
        CHECK_THROWS(generate_pwm(cfg, 1.0, 1e6));
        cfg.phase = 0.0;
        cfg.low_level = 1.0;
        cfg.high_level = -1.0;
        CHECK_THROWS(generate_pwm(cfg, 1.0, 1e6));
    }

    // Series coefficients: zero for even n, 4/(n*pi) for odd n.
    CHECK_NEAR(rect_fourier_coefficient(1), 1.2732395447351628, 1e-15);
    CHECK(rect_fourier_coefficient(2) == 0.0);
    CHECK_NEAR(rect_fourier_coefficient(3), 0.4244131815783876, 1e-15);
    CHECK(rect_fourier_coefficient(4) == 0.0);
    CHECK_NEAR(rect_fourier_coefficient(5), 0.25464790894703254, 1e-15);
    CHECK_NEAR(rect_fourier_coefficient(7), 0.18189136353359467, 1e-15);
    CHECK_THROWS(rect_fourier_coefficient(0));
    CHECK_THROWS(rect_fourier_coefficient(-3));

    // k_max 0 is a bare sine of amplitude 4/pi.
    {
        const SignalBuffer buf = synthesize_partial_sum(50.0, 0, 0.1, 10000.0);
        bool matches = true;
        for (std::size_t i = 0; i < buf.samples.size(); ++i) {
            const double t = static_cast<double>(i) / buf.sample_rate;
            const double want =
                (4.0 / std::numbers::pi) * std::sin(2.0 * std::numbers::pi * 50.0 * t);
            matches = matches && std::abs(buf.samples[i] - want) < 1e-12;
        }
        CHECK(matches);
        CHECK(buf.samples[0] == 0.0);  // sine series starts at the zero crossing
    }

    // The highest synthesized harmonic must stay under Nyquist.
    CHECK_THROWS(synthesize_partial_sum(50.0, 200, 0.1, 10000.0));
    CHECK_THROWS(synthesize_partial_sum(0.0, 10, 0.1, 10000.0));
    CHECK_THROWS(synthesize_partial_sum(50.0, -1, 0.1, 10000.0));

    // Convergence away from the jumps: under 0.05 by k_max 200, and the
    // interior error shrinks monotonically as terms are added.
    {
        const double freq = 50.0;
        const double rate = 100000.0;
        const SignalBuffer ideal = generate_pwm(square(freq), 0.1, rate);

        const SignalBuffer k200 = synthesize_partial_sum(freq, 200, 0.1, rate);
        CHECK(interior_error(k200, ideal, freq) < 0.05);

        // Gibbs overshoot: partial sums of a -1/+1 square peak near
        // 2*Si(pi)/pi ~ 1.1790 regardless of how many terms are added. The
        // overshoot lobe spans only rate/(2*(2k+1)*freq) samples, so sample
        // densely enough to land a point on it.
        const SignalBuffer dense = synthesize_partial_sum(freq, 200, 0.1, 2000000.0);
        const double peak = *std::max_element(dense.samples.begin(), dense.samples.end());
        CHECK(peak > 1.15);
        CHECK(peak < 1.20);

        double previous = 1e9;
        for (int k : {10, 20, 40, 80, 160}) {
            const SignalBuffer partial = synthesize_partial_sum(freq, k, 0.1, rate);
            const double err = interior_error(partial, ideal, freq);
            CHECK(err < previous);
            previous = err;
        }
    }

    if (g_failures != 0) {
        std::fprintf(stderr, "%d signal checks failed\n", g_failures);
        return 1;
    }
    std::printf("signal: all checks passed\n");
    return 0;
}
