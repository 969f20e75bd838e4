// End-to-end acceptance gate: each numbered block prints one PASS/FAIL line
// and the process exits nonzero if any of them failed.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pwmradio/channel.hpp"
#include "pwmradio/dsp.hpp"
#include "pwmradio/morse.hpp"
#include "pwmradio/receiver.hpp"
#include "pwmradio/signal.hpp"
#include "pwmradio/sources.hpp"
#include "pwmradio/spectrum.hpp"
#include "pwmradio/transmitter.hpp"

using namespace pwmradio;

namespace {

int g_failed = 0;

void report(int criterion, const char* name, bool ok, const std::string& detail) {
    std::printf("%s criterion-%d %s: %s\n", ok ? "PASS" : "FAIL", criterion, name,
                detail.c_str());
    if (!ok) {
        ++g_failed;
    }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

TransmitterConfig desk_tx(double duty) {
    TransmitterConfig cfg;
    cfg.carrier.frequency = 31.25e6 / 250.0;  // 125 kHz desk-scale carrier
    cfg.carrier.duty = duty;
    cfg.coupling_tau = 1e-3;
    cfg.rf_sample_rate = 1e6;
    return cfg;
}

double rms(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x * x;
    }
    return v.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(v.size()));
}

double energy(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x * x;
    }
    return acc;
}

std::string normalize(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == ' ') {
            if (!out.empty() && out.back() != ' ') {
                out += ' ';
            }
        } else {
            out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
    }
    if (!out.empty() && out.back() == ' ') {
        out.pop_back();
    }
    return out;
}

}  // namespace

int main() {
    // 1. Odd harmonics of a 50% square weigh 4/(n*pi); even ones vanish.
    {
        const auto start = std::chrono::steady_clock::now();
        PwmConfig cfg;
        cfg.frequency = 125000.0;
        cfg.duty = 0.5;
        const SignalBuffer buf = generate_pwm(cfg, 0.1, 1e6);
        const Spectrum spec = analyze_spectrum(buf, 65536);

        double worst_odd = 0.0;
        const double fundamental = measure_harmonic(spec, 125000.0, 1);
        for (int h = 1; h <= 7; h += 2) {
            const double want = 4.0 / (static_cast<double>(h) * std::numbers::pi);
            const double got = measure_harmonic(spec, 125000.0, h);
            worst_odd = std::max(worst_odd, std::abs(got - want) / want);
        }
        double worst_even_db = -1e9;
        for (int h = 2; h <= 6; h += 2) {
            const double got = measure_harmonic(spec, 125000.0, h);
            worst_even_db =
                std::max(worst_even_db, 20.0 * std::log10(std::max(got, 1e-300) / fundamental));
        }
        const double elapsed = seconds_since(start);
        const bool ok = worst_odd < 0.02 && worst_even_db < -40.0 && elapsed < 5.0;
        char detail[160];
        std::snprintf(detail, sizeof detail,
                      "worst odd error %.2e (limit 2e-2), worst even %.1f dB (limit -40), %.2f s",
                      worst_odd, worst_even_db, elapsed);
        report(1, "harmonic-law", ok, detail);
    }

    // 2. The reference word spans 50 units, 14/8/10/6/12 per character.
    {
        const KeyingSchedule paris = encode_canonical("PARIS", 1.0);
        const double total = paris.duration();
        std::vector<double> spans;
        double span = 0.0;
        for (const auto& e : paris.entries) {
            span += e.duration;
            if (e.level == 0 && e.duration > 2.9) {
                spans.push_back(span);
                span = 0.0;
            }
        }
        const std::vector<double> want = {14.0, 8.0, 10.0, 6.0, 12.0};
        bool ok = std::abs(total - 50.0) < 1e-9 && spans.size() == want.size();
        for (std::size_t i = 0; ok && i < want.size(); ++i) {
            ok = std::abs(spans[i] - want[i]) < 1e-9;
        }
        char detail[160];
        std::snprintf(detail, sizeof detail,
                      "total %.12g units, spans %g/%g/%g/%g/%g", total,
                      spans.size() > 0 ? spans[0] : -1.0, spans.size() > 1 ? spans[1] : -1.0,
                      spans.size() > 2 ? spans[2] : -1.0, spans.size() > 3 ? spans[3] : -1.0,
                      spans.size() > 4 ? spans[4] : -1.0);
        report(2, "reference-word-timing", ok, detail);
    }

    // Keyed transmission shared by blocks 3 and 5.
    const std::string message = "HELLO WORLD!";
    const SignalBuffer clean_rf =
        am_transmit(desk_tx(0.5), keying_to_stream(encode_canonical(message, 0.05), 600.0, 0.5));

    // 3. Keyed text survives the full chain at 20 dB SNR.
    {
        const auto start = std::chrono::steady_clock::now();
        ChannelConfig channel;
        channel.noise_rms = rms(clean_rf.samples) / 10.0;  // 20 dB below signal
        channel.seed = 2026;
        const SignalBuffer noisy = apply_channel(clean_rf, channel);

        TunerConfig tuner;
        tuner.center = 125000.0;
        tuner.bandwidth = 3000.0;
        const SignalBuffer wide = tune_am(noisy, tuner, 48000.0);
        const SignalBuffer narrow = resample(wide, 22000.0);
        const std::string decoded = decode_audio(narrow, 600.0);
        const double elapsed = seconds_since(start);
        const bool ok = decoded == message && elapsed < 30.0;
        char detail[200];
        std::snprintf(detail, sizeof detail, "decoded '%s' (want '%s'), %.1f s",
                      decoded.c_str(), message.c_str(), elapsed);
        report(3, "keyed-roundtrip-20dB", ok, detail);
    }

    // 4. The stepped sweep walks 200 -> 1190 Hz monotonically in one second.
    {
        const SignalBuffer rf = am_transmit(desk_tx(0.25), sweep_stream());
        TunerConfig tuner;
        tuner.center = 125000.0;
        tuner.bandwidth = 80000.0;
        const SignalBuffer audio = tune_am(rf, tuner, 48000.0);

        const std::size_t frame = 480;  // 10 ms, one sweep step
        std::vector<double> ridge;
        std::vector<double> level;
        for (std::size_t startpos = 0; startpos + frame <= audio.samples.size();
             startpos += frame) {
            // Remove the frame's own mean so the DC step left by global mean
            // removal over the silent tail cannot leak into the low bins.
            std::vector<double> piece(audio.samples.begin() + static_cast<std::ptrdiff_t>(startpos),
                                      audio.samples.begin() +
                                          static_cast<std::ptrdiff_t>(startpos + frame));
            double frame_mean = 0.0;
            for (double v : piece) {
                frame_mean += v;
            }
            frame_mean /= static_cast<double>(frame);
            for (double& v : piece) {
                v -= frame_mean;
            }
            double best_amp = 0.0;
            double best_freq = 0.0;
            for (double f = 150.0; f <= 1250.0; f += 2.0) {
                const double a = goertzel_amplitude(piece, 0, frame, f, 48000.0);
                if (a > best_amp) {
                    best_amp = a;
                    best_freq = f;
                }
            }
            ridge.push_back(best_freq);
            level.push_back(best_amp);
        }
        const double peak = *std::max_element(level.begin(), level.end());
        std::size_t first = ridge.size();
        std::size_t last = 0;
        for (std::size_t k = 0; k < ridge.size(); ++k) {
            if (level[k] > 0.1 * peak) {
                first = std::min(first, k);
                last = std::max(last, k);
            }
        }
        bool monotone = first < last;
        double dips = 0.0;
        for (std::size_t k = first; k + 1 <= last && k + 1 < ridge.size(); ++k) {
            if (level[k] > 0.1 * peak && level[k + 1] > 0.1 * peak) {
                dips = std::max(dips, ridge[k] - ridge[k + 1]);
                monotone = monotone && ridge[k + 1] >= ridge[k] - 2.0;
            }
        }
        const double span_s = static_cast<double>(last - first + 1) * 0.01;
        const bool start_ok = std::abs(ridge[first] - 200.0) <= 10.0;
        const bool end_ok = std::abs(ridge[last] - 1190.0) <= 10.0;
        const bool span_ok = span_s >= 0.98 && span_s <= 1.02;
        const bool ok = monotone && start_ok && end_ok && span_ok;
        char detail[200];
        std::snprintf(detail, sizeof detail,
                      "ridge %.0f -> %.0f Hz over %.2f s, largest dip %.0f Hz",
                      ridge[first], ridge[last], span_s, dips);
        report(4, "sweep-ridge", ok, detail);
    }

    // 5. The program rides every odd harmonic; even ones are nulls.
    {
        TunerConfig tuner;
        tuner.bandwidth = 3000.0;
        tuner.center = 125000.0;
        const SignalBuffer at_1x = tune_am(clean_rf, tuner, 48000.0);
        tuner.center = 375000.0;
        const SignalBuffer at_3x = tune_am(clean_rf, tuner, 48000.0);
        tuner.center = 250000.0;
        const SignalBuffer at_2x = tune_am(clean_rf, tuner, 48000.0);

        const double corr = correlation(at_1x.samples, at_3x.samples);
        const double leak = energy(at_2x.samples) / energy(at_1x.samples);
        const bool ok = corr >= 0.9 && leak < 0.01;
        char detail[160];
        std::snprintf(detail, sizeof detail,
                      "3x correlation %.4f (need >= 0.9), 2x energy ratio %.2e (need < 1e-2)",
                      corr, leak);
        report(5, "harmonic-retune", ok, detail);
    }

    // 6. A 440 Hz tone shipped as 8-bit PCM comes back as the same tone, and
    // byte pacing maps exactly onto RF sample counts.
    {
        std::vector<std::uint8_t> pcm(16000);
        for (std::size_t i = 0; i < pcm.size(); ++i) {
            const double s =
                std::sin(2.0 * std::numbers::pi * 440.0 * static_cast<double>(i) / 16000.0);
            pcm[i] = static_cast<std::uint8_t>(std::lround(128.0 + 127.0 * s));
        }
        const SignalBuffer rf = am_transmit(desk_tx(0.25), raw_pcm_to_stream(pcm, {}));
        TunerConfig tuner;
        tuner.center = 125000.0;
        tuner.bandwidth = 20000.0;
        const SignalBuffer audio = tune_am(rf, tuner, 48000.0);

        std::vector<double> reference(24000);
        for (std::size_t i = 0; i < reference.size(); ++i) {
            reference[i] =
                std::sin(2.0 * std::numbers::pi * 440.0 * static_cast<double>(i) / 48000.0);
        }
        double best = -1.0;
        std::size_t best_shift = 0;
        for (std::size_t shift = 0; shift + reference.size() <= audio.samples.size() &&
                                    shift <= 1500;
             ++shift) {
            const std::vector<double> window(
                audio.samples.begin() + static_cast<std::ptrdiff_t>(shift),
                audio.samples.begin() + static_cast<std::ptrdiff_t>(shift + reference.size()));
            const double c = correlation(window, reference);
            if (c > best) {
                best = c;
                best_shift = shift;
            }
        }

        RawAudioConfig pacing;
        pacing.pacing = 85e-6;
        AmModulator exact(desk_tx(0.25), raw_pcm_to_stream(pcm, pacing));
        const bool count_ok = exact.total_samples() == pcm.size() * 85;
        const bool ok = best >= 0.95 && count_ok;
        char detail[200];
        std::snprintf(detail, sizeof detail,
                      "correlation %.4f at %zu-sample delay (need >= 0.95), 85 us pacing "
                      "gives %zu RF samples for %zu bytes",
                      best, best_shift, exact.total_samples(), pcm.size());
        report(6, "pcm-audio-fidelity", ok, detail);
    }

    // 7. Quarter-wave antenna rule at the full-scale carrier.
    {
        const double length = optimal_antenna_length(31.25);
        const bool ok = std::abs(length - 4.5632) < 1e-9 &&
                        std::abs(std::round(length * 100.0) / 100.0 - 4.56) < 1e-12;
        char detail[120];
        std::snprintf(detail, sizeof detail, "142.6 / 31.25 = %.4f m", length);
        report(7, "antenna-length", ok, detail);
    }

    // 8. Property sweeps: text roundtrips, resampled tone pitch, harmonic
    // ratio scale invariance, seeded determinism.
    {
        // Random keying roundtrips, unit recovered blind.
        std::vector<char> alphabet;
        for (const auto& [c, code] : standard_table().codes) {
            if (c != ' ') {
                alphabet.push_back(c);
            }
        }
        std::mt19937 rng(2468);
        std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
        std::uniform_int_distribution<int> len(1, 24);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        int mismatches = 0;
        for (int round = 0; round < 200; ++round) {
            std::string text;
            const int L = len(rng);
            for (int i = 0; i < L; ++i) {
                text += coin(rng) < 0.15 ? ' ' : alphabet[pick(rng)];
            }
            if (decode_keying(encode_canonical(text, 0.02)) != normalize(text)) {
                ++mismatches;
            }
        }

        // Resampled tone stays on pitch within 1 Hz.
        SignalBuffer tone;
        tone.sample_rate = 48000.0;
        tone.samples.resize(48000);
        for (std::size_t i = 0; i < tone.samples.size(); ++i) {
            tone.samples[i] = std::sin(2.0 * std::numbers::pi * 1000.0 *
                                       static_cast<double>(i) / 48000.0);
        }
        const SignalBuffer at22 = resample(tone, 22000.0);
        double best_amp = 0.0;
        double best_freq = 0.0;
        for (double f = 995.0; f <= 1005.0; f += 0.25) {
            const double a = goertzel_amplitude(at22.samples, 1000, 17600, f, 22000.0);
            if (a > best_amp) {
                best_amp = a;
                best_freq = f;
            }
        }
        const double pitch_err = std::abs(best_freq - 1000.0);

        // Harmonic ratios are independent of the rail swing.
        PwmConfig unit;
        unit.frequency = 125000.0;
        unit.duty = 0.5;
        PwmConfig swung = unit;
        swung.low_level = -2.5;
        swung.high_level = 2.5;
        const Spectrum a = analyze_spectrum(generate_pwm(unit, 0.01, 1e6), 8192);
        const Spectrum b = analyze_spectrum(generate_pwm(swung, 0.01, 1e6), 8192);
        double ratio_err = 0.0;
        const double base_a = measure_harmonic(a, 125000.0, 1);
        const double base_b = measure_harmonic(b, 125000.0, 1);
        for (int h = 3; h <= 7; h += 2) {
            const double ra = measure_harmonic(a, 125000.0, h) / base_a;
            const double rb = measure_harmonic(b, 125000.0, h) / base_b;
            ratio_err = std::max(ratio_err, std::abs(ra - rb));
        }

        // Seeded noise and table shuffles repeat exactly.
        SignalBuffer zeros;
        zeros.sample_rate = 1e6;
        zeros.samples.assign(10000, 0.0);
        ChannelConfig noisy;
        noisy.noise_rms = 0.1;
        noisy.seed = 7;
        const bool noise_repeats =
            apply_channel(zeros, noisy).samples == apply_channel(zeros, noisy).samples;
        ChannelConfig other = noisy;
        other.seed = 8;
        const bool noise_varies =
            apply_channel(zeros, noisy).samples != apply_channel(zeros, other).samples;
        const bool shuffle_repeats =
            shuffle_table(standard_table(), 77).codes ==
            shuffle_table(standard_table(), 77).codes;

        const bool ok = mismatches == 0 && pitch_err <= 1.0 && ratio_err < 1e-9 &&
                        noise_repeats && noise_varies && shuffle_repeats;
        char detail[220];
        std::snprintf(detail, sizeof detail,
                      "200 roundtrips (%d bad), pitch error %.2f Hz (limit 1), ratio "
                      "drift %.1e (limit 1e-9), determinism %s",
                      mismatches, pitch_err, ratio_err,
                      noise_repeats && noise_varies && shuffle_repeats ? "held" : "BROKE");
        report(8, "property-suites", ok, detail);
    }

    if (g_failed != 0) {
        std::printf("acceptance: %d of 8 criteria failed\n", g_failed);
        return 1;
    }
    std::printf("acceptance: all 8 criteria passed\n");
    return 0;
}
