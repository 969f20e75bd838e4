#pragma once

#include <cstddef>
#include <vector>

#include "pwmradio/morse.hpp"
#include "pwmradio/signal.hpp"

namespace pwmradio {

// One modulator command: hold the duty input at `duty` for `hold` seconds.
struct DutyCommand {
    double duty = 0.0;  // [0,1]
    double hold = 0.0;  // seconds, > 0
};

// Piecewise-constant duty command timeline driving the transmitter.
struct ModulationStream {
    std::vector<DutyCommand> commands;

    double total_duration() const;
};

struct TransmitterConfig {
    PwmConfig carrier;              // RF rectangle, rails -1/+1 by default
    double coupling_tau = 1e-3;     // seconds, first-order smoothing of duty
    double rf_sample_rate = 1e6;    // Hz
};

// AM synthesis: the duty command is low-pass filtered by a single pole with
// time constant coupling_tau (the AC coupling between modulator and carrier
// behaves like one), and the result scales the carrier rectangle sample by
// sample. The envelope state starts at zero, so a constant stream settles
// within about 5 tau.
//
// Throws std::invalid_argument on an empty stream, a command with hold <= 0
// or duty outside [0,1], an invalid carrier, tau <= 0, or an RF rate below
// 2x the carrier frequency.
SignalBuffer am_transmit(const TransmitterConfig& cfg, const ModulationStream& stream);

// Chunked variant of am_transmit for streamed output: next() appends up to
// max_samples RF samples and returns how many it produced (0 at the end).
class AmModulator {
public:
    AmModulator(const TransmitterConfig& cfg, const ModulationStream& stream);

    std::size_t next(std::size_t max_samples, std::vector<double>& out);
    std::size_t total_samples() const { return total_samples_; }

private:
    TransmitterConfig cfg_;
    std::vector<std::size_t> boundaries_;  // cumulative end sample of each command
    std::vector<double> duties_;
    std::size_t total_samples_ = 0;
    std::size_t pos_ = 0;       // next sample index
    std::size_t command_ = 0;   // current command index
    double envelope_ = 0.0;
    double alpha_ = 0.0;        // one-pole coefficient for the RF sample period
};

// Audio-rate tone rendered as duty switching: each tone period is duty 1.0
// for tone_duty of the period, then duty 0 for the rest, the same two-level
// waveform a logic-output modulator pin produces. A partial period at the
// end of an interval is clipped to fit.
//
// Stepped frequency sweep: step_count tones of frequency base + n*increment,
// each held step_hold seconds. Defaults walk 200 Hz to 1190 Hz in 10 Hz
// steps of 10 ms, one second in total.
ModulationStream sweep_stream(int step_count = 100, double base = 200.0,
                              double increment = 10.0, double step_hold = 0.01,
                              double tone_duty = 0.5);

// Renders a keying schedule: level-1 intervals become the tone oscillation
// above, level-0 intervals a single zero-duty hold. Throws
// std::invalid_argument on an empty schedule, tone <= 0, tone_duty outside
// [0,1], a non-positive duration, or a level other than 0/1.
ModulationStream keying_to_stream(const KeyingSchedule& schedule, double tone = 600.0,
                                  double tone_duty = 0.5);

}  // namespace pwmradio
