#include "pwmradio/transmitter.hpp"

#include <cmath>
#include <stdexcept>

namespace pwmradio {

double ModulationStream::total_duration() const {
    double sum = 0.0;
    double carry = 0.0;  // Kahan, the streams can hold millions of commands
    for (const auto& c : commands) {
        const double y = c.hold - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

AmModulator::AmModulator(const TransmitterConfig& cfg, const ModulationStream& stream)
    : cfg_(cfg) {
    validate(cfg.carrier);
    if (cfg.coupling_tau <= 0.0) {
        throw std::invalid_argument("coupling_tau must be positive");
    }
    if (cfg.rf_sample_rate < 2.0 * cfg.carrier.frequency) {
        throw std::invalid_argument("rf_sample_rate must be at least twice the carrier");
    }
    if (stream.commands.empty()) {
        throw std::invalid_argument("modulation stream is empty");
    }

    boundaries_.reserve(stream.commands.size());
    duties_.reserve(stream.commands.size());
    double elapsed = 0.0;
    double carry = 0.0;
    for (const auto& c : stream.commands) {
        if (c.hold <= 0.0) {
            throw std::invalid_argument("command hold must be positive");
        }
        if (c.duty < 0.0 || c.duty > 1.0) {
            throw std::invalid_argument("command duty must be within [0,1]");
        }
        const double y = c.hold - carry;
        const double t = elapsed + y;
        carry = (t - elapsed) - y;
        elapsed = t;
        boundaries_.push_back(
            static_cast<std::size_t>(std::llround(elapsed * cfg.rf_sample_rate)));
        duties_.push_back(c.duty);
    }
    total_samples_ = boundaries_.back();
    alpha_ = 1.0 - std::exp(-1.0 / (cfg.coupling_tau * cfg.rf_sample_rate));
}

std::size_t AmModulator::next(std::size_t max_samples, std::vector<double>& out) {
    const std::size_t end = std::min(total_samples_, pos_ + max_samples);
    const std::size_t produced = end - pos_;
    out.reserve(out.size() + produced);

    const double step = cfg_.carrier.frequency / cfg_.rf_sample_rate;
    for (; pos_ < end; ++pos_) {
        while (command_ < boundaries_.size() && pos_ >= boundaries_[command_]) {
            ++command_;
        }
        const double duty_in = command_ < duties_.size() ? duties_[command_] : 0.0;
        envelope_ += alpha_ * (duty_in - envelope_);

        const double x = static_cast<double>(pos_) * step + cfg_.carrier.phase;
        const double cycle_pos = x - std::floor(x);
        const double carrier = cycle_pos < cfg_.carrier.duty ? cfg_.carrier.high_level
                                                             : cfg_.carrier.low_level;
        out.push_back(carrier * envelope_);
    }
    return produced;
}

SignalBuffer am_transmit(const TransmitterConfig& cfg, const ModulationStream& stream) {
    AmModulator mod(cfg, stream);
    SignalBuffer buf;
    buf.sample_rate = cfg.rf_sample_rate;
    mod.next(mod.total_samples(), buf.samples);
    return buf;
}

namespace {

// Appends one audio tone interval as duty switching, clipping the final
// partial period to the interval end.
void append_tone(ModulationStream& stream, double tone, double tone_duty, double duration) {
    const double period = 1.0 / tone;
    const double high = period * tone_duty;
    const double low = period - high;
    double remaining = duration;
    while (remaining > 1e-15) {
        if (high > 0.0) {
            const double h = std::min(high, remaining);
            stream.commands.push_back({1.0, h});
            remaining -= h;
            if (remaining <= 1e-15) {
                break;
            }
        }
        if (low > 0.0) {
            const double l = std::min(low, remaining);
            stream.commands.push_back({0.0, l});
            remaining -= l;
        }
    }
}

}  // namespace

ModulationStream sweep_stream(int step_count, double base, double increment,
                              double step_hold, double tone_duty) {
    if (step_count < 1) {
        throw std::invalid_argument("step_count must be >= 1");
    }
    if (base <= 0.0 || step_hold <= 0.0) {
        throw std::invalid_argument("base frequency and step_hold must be positive");
    }
    if (tone_duty < 0.0 || tone_duty > 1.0) {
        throw std::invalid_argument("tone_duty must be within [0,1]");
    }
    ModulationStream stream;
    for (int n = 0; n < step_count; ++n) {
        const double f = base + static_cast<double>(n) * increment;
        if (f <= 0.0) {
            throw std::invalid_argument("sweep step frequency fell to zero or below");
        }
        append_tone(stream, f, tone_duty, step_hold);
    }
    return stream;
}

ModulationStream keying_to_stream(const KeyingSchedule& schedule, double tone,
                                  double tone_duty) {
    if (schedule.entries.empty()) {
        throw std::invalid_argument("keying schedule is empty");
    }
    if (tone <= 0.0) {
        throw std::invalid_argument("tone must be positive");
    }
    if (tone_duty < 0.0 || tone_duty > 1.0) {
        throw std::invalid_argument("tone_duty must be within [0,1]");
    }
    ModulationStream stream;
    for (const auto& e : schedule.entries) {
        if (e.duration <= 0.0) {
            throw std::invalid_argument("keying entry duration must be positive");
        }
        if (e.level == 1) {
            append_tone(stream, tone, tone_duty, e.duration);
        } else if (e.level == 0) {
            stream.commands.push_back({0.0, e.duration});
        } else {
            throw std::invalid_argument("keying level must be 0 or 1");
        }
    }
    return stream;
}

}  // namespace pwmradio
