#include "pwmradio/receiver.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "pwmradio/dsp.hpp"

namespace pwmradio {

namespace {

long integral_rate(double rate, const char* what) {
    const long r = std::lround(rate);
    if (r < 1 || std::abs(rate - static_cast<double>(r)) > 1e-6) {
        throw std::invalid_argument(std::string(what) + " must be a positive whole number of Hz");
    }
    return r;
}

// Largest divisor d of fs with fs/d still at or above `floor_rate`.
long pick_decimation(long fs, double floor_rate) {
    long d = static_cast<long>(static_cast<double>(fs) / floor_rate);
    for (; d > 1; --d) {
        if (fs % d == 0) {
            return d;
        }
    }
    return 1;
}

}  // namespace

SignalBuffer tune_am(const SignalBuffer& rf, const TunerConfig& cfg, double audio_rate) {
    const long fs = integral_rate(rf.sample_rate, "RF rate");
    const long fa = integral_rate(audio_rate, "audio rate");
    if (cfg.center <= 0.0) {
        throw std::invalid_argument("tuner center must be positive");
    }
    if (cfg.center >= static_cast<double>(fs) / 2.0) {
        throw std::invalid_argument("tuner center is beyond the RF Nyquist rate");
    }
    if (cfg.bandwidth <= 0.0) {
        throw std::invalid_argument("tuner bandwidth must be positive");
    }

    SignalBuffer audio;
    audio.sample_rate = static_cast<double>(fa);
    if (rf.samples.empty()) {
        return audio;
    }

    // Decimate as far as the passband and the audio rate allow before the
    // narrow channel filter; its length scales with the rate it runs at.
    const double floor_rate = std::max(static_cast<double>(fa), 2.0 * cfg.bandwidth);
    const long decim = pick_decimation(fs, std::max(floor_rate, 1.0));
    const long r1 = fs / decim;
    const double half_bw = cfg.bandwidth / 2.0;
    if (half_bw * 1.05 >= static_cast<double>(r1) / 2.0) {
        throw std::invalid_argument("tuner bandwidth does not fit the decimated rate");
    }

    FirFilter<std::complex<double>> stage_a(
        decim > 1 ? design_lowpass(static_cast<double>(fs), 0.4 * static_cast<double>(r1),
                                   0.1 * static_cast<double>(r1), 60.0)
                  : std::vector<double>{1.0},
        static_cast<std::size_t>(decim));
    FirFilter<std::complex<double>> stage_b(
        design_lowpass(static_cast<double>(r1), half_bw, 0.1 * half_bw, 60.0));

    // Mix to baseband in chunks; the oscillator phase advances as a period
    // fraction so it stays exact over long buffers.
    const std::size_t chunk = 1 << 20;
    const double step = cfg.center / static_cast<double>(fs);
    double phase = 0.0;
    std::vector<std::complex<double>> mixed;
    std::vector<std::complex<double>> decimated;
    mixed.reserve(std::min(chunk, rf.samples.size()));
    for (std::size_t start = 0; start < rf.samples.size(); start += chunk) {
        const std::size_t end = std::min(rf.samples.size(), start + chunk);
        mixed.clear();
        for (std::size_t i = start; i < end; ++i) {
            const double angle = 2.0 * std::numbers::pi * phase;
            mixed.emplace_back(rf.samples[i] * std::cos(angle),
                               -rf.samples[i] * std::sin(angle));
            phase += step;
            phase -= std::floor(phase);
        }
        stage_a.process(mixed, decimated);
    }

    std::vector<std::complex<double>> filtered;
    filtered.reserve(decimated.size());
    stage_b.process(decimated, filtered);

    std::vector<double> envelope(filtered.size());
    for (std::size_t i = 0; i < filtered.size(); ++i) {
        envelope[i] = std::abs(filtered[i]);
    }
    const double mean = envelope.empty()
                            ? 0.0
                            : std::accumulate(envelope.begin(), envelope.end(), 0.0) /
                                  static_cast<double>(envelope.size());
    for (auto& v : envelope) {
        v -= mean;
    }

    if (cfg.agc == AgcMode::On) {
        const double attack = 1.0 - std::exp(-1.0 / (0.05 * static_cast<double>(r1)));
        const double release = 1.0 - std::exp(-1.0 / (0.5 * static_cast<double>(r1)));
        double track = 0.0;
        for (auto& v : envelope) {
            const double mag = std::abs(v);
            track += (mag > track ? attack : release) * (mag - track);
            v /= std::max(track, 1e-6);
        }
    }

    audio.samples = resample_rational(envelope, r1, fa);
    return audio;
}

SignalBuffer resample(const SignalBuffer& audio, double out_rate) {
    const long fin = integral_rate(audio.sample_rate, "input rate");
    const long fout = integral_rate(out_rate, "output rate");
    SignalBuffer out;
    out.sample_rate = static_cast<double>(fout);
    out.samples = resample_rational(audio.samples, fin, fout);
    return out;
}

double harmonic_retune_check(const SignalBuffer& rf, double base, int multiple,
                             const TunerConfig& cfg, double audio_rate) {
    if (multiple < 1) {
        throw std::invalid_argument("harmonic multiple must be >= 1");
    }
    TunerConfig at_base = cfg;
    at_base.center = base;
    TunerConfig at_harmonic = cfg;
    at_harmonic.center = base * static_cast<double>(multiple);
    const SignalBuffer a = tune_am(rf, at_base, audio_rate);
    const SignalBuffer b = tune_am(rf, at_harmonic, audio_rate);
    // Pearson correlation is scale-free, which is the amplitude
    // normalization the comparison needs.
    return correlation(a.samples, b.samples);
}

}  // namespace pwmradio
