#include "pwmradio/sources.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pwmradio {

ModulationStream raw_pcm_to_stream(const std::vector<std::uint8_t>& bytes,
                                   const RawAudioConfig& cfg) {
    if (bytes.empty()) {
        throw std::invalid_argument("no PCM bytes to play");
    }
    if (cfg.pacing <= 0.0) {
        throw std::invalid_argument("pacing must be positive");
    }
    ModulationStream stream;
    stream.commands.reserve(bytes.size());
    for (std::uint8_t b : bytes) {
        // Same scaling a duty register write of (b << 8) produces.
        stream.commands.push_back({static_cast<double>(b << 8) / 65536.0, cfg.pacing});
    }
    return stream;
}

ModulationStream live_stream(const std::vector<std::uint16_t>& samples, double sample_rate) {
    if (samples.empty()) {
        throw std::invalid_argument("no samples to play");
    }
    if (sample_rate <= 0.0) {
        throw std::invalid_argument("sample_rate must be positive");
    }
    ModulationStream stream;
    stream.commands.reserve(samples.size());
    const double hold = 1.0 / sample_rate;
    for (std::uint16_t v : samples) {
        stream.commands.push_back({static_cast<double>(v) / 65536.0, hold});
    }
    return stream;
}

double note_to_frequency(const std::string& pitch) {
    // Letter, optional accidental, octave; semitone offsets from C.
    static constexpr int kOffsets[7] = {9, 11, 0, 2, 4, 5, 7};  // A B C D E F G
    if (pitch.size() < 2) {
        throw std::invalid_argument("pitch too short: '" + pitch + "'");
    }
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(pitch[0])));
    if (letter < 'A' || letter > 'G') {
        throw std::invalid_argument("pitch letter out of range: '" + pitch + "'");
    }
    int semitone = kOffsets[letter - 'A'];
    std::size_t i = 1;
    if (pitch[i] == '#') {
        ++semitone;
        ++i;
    } else if (pitch[i] == 'b') {
        --semitone;
        ++i;
    }
    if (i >= pitch.size()) {
        throw std::invalid_argument("pitch missing octave: '" + pitch + "'");
    }
    int octave = 0;
    for (; i < pitch.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(pitch[i]))) {
            throw std::invalid_argument("pitch octave not a number: '" + pitch + "'");
        }
        octave = octave * 10 + (pitch[i] - '0');
        if (octave > 9) {
            break;
        }
    }
    const int midi = (octave + 1) * 12 + semitone;
    if (midi < 21 || midi > 108) {  // A0 through C8
        throw std::invalid_argument("pitch outside A0..C8: '" + pitch + "'");
    }
    return 440.0 * std::pow(2.0, static_cast<double>(midi - 69) / 12.0);
}

std::vector<NoteEvent> parse_sequence(const std::string& text) {
    std::vector<NoteEvent> events;
    std::size_t index = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find(';', begin);
        if (end == std::string::npos) {
            end = text.size();
        }
        const std::string record = text.substr(begin, end - begin);
        begin = end + 1;
        const bool blank = record.find_first_not_of(" \t\r\n") == std::string::npos;
        if (!blank) {
            std::istringstream fields(record);
            NoteEvent ev;
            std::string extra;
            if (!(fields >> ev.start_tick >> ev.pitch >> ev.duration_ticks >> ev.instrument) ||
                (fields >> extra) || ev.start_tick < 0 || ev.duration_ticks < 1) {
                throw std::invalid_argument("bad sequence record " + std::to_string(index) +
                                            ": '" + record + "'");
            }
            note_to_frequency(ev.pitch);  // reject unplayable pitches here
            events.push_back(std::move(ev));
        }
        ++index;
        if (end == text.size()) {
            break;
        }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const NoteEvent& a, const NoteEvent& b) {
                         return a.start_tick < b.start_tick;
                     });
    return events;
}

std::string serialize_sequence(const std::vector<NoteEvent>& events) {
    std::ostringstream out;
    for (const auto& ev : events) {
        out << ev.start_tick << ' ' << ev.pitch << ' ' << ev.duration_ticks << ' '
            << ev.instrument << ';';
    }
    return out.str();
}

ModulationStream sequence_to_stream(const std::vector<NoteEvent>& events,
                                    double tick_seconds, double arpeggio_rate) {
    if (tick_seconds <= 0.0 || arpeggio_rate <= 0.0) {
        throw std::invalid_argument("tick_seconds and arpeggio_rate must be positive");
    }
    ModulationStream stream;
    if (events.empty()) {
        return stream;
    }

    long last_tick = 0;
    for (const auto& ev : events) {
        if (ev.start_tick < 0 || ev.duration_ticks < 1) {
            throw std::invalid_argument("note ticks must be non-negative");
        }
        last_tick = std::max(last_tick, ev.start_tick + ev.duration_ticks);
    }

    auto append_tone_span = [&stream](double freq, double duration) {
        const double period = 1.0 / freq;
        const double high = period * 0.5;
        double remaining = duration;
        while (remaining > 1e-15) {
            const double h = std::min(high, remaining);
            stream.commands.push_back({1.0, h});
            remaining -= h;
            if (remaining <= 1e-15) {
                break;
            }
            const double l = std::min(period - high, remaining);
            stream.commands.push_back({0.0, l});
            remaining -= l;
        }
    };

    for (long tick = 0; tick < last_tick; ++tick) {
        std::vector<double> active;
        for (const auto& ev : events) {
            if (ev.start_tick <= tick && tick < ev.start_tick + ev.duration_ticks) {
                active.push_back(note_to_frequency(ev.pitch));
            }
        }
        if (active.empty()) {
            stream.commands.push_back({0.0, tick_seconds});
            continue;
        }
        if (active.size() == 1) {
            append_tone_span(active[0], tick_seconds);
            continue;
        }
        // Round-robin arpeggio: the chord cycles at arpeggio_rate, so each
        // of the k notes gets 1/(rate*k) per visit.
        const double slice = 1.0 / (arpeggio_rate * static_cast<double>(active.size()));
        double remaining = tick_seconds;
        std::size_t turn = 0;
        while (remaining > 1e-15) {
            const double s = std::min(slice, remaining);
            append_tone_span(active[turn % active.size()], s);
            remaining -= s;
            ++turn;
        }
    }
    return stream;
}

}  // namespace pwmradio
