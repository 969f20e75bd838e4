#include "pwmradio/morse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pwmradio/dsp.hpp"

/*
 * CW timing, in dit units: dit 1, dah 3, gap between symbols 1, between
 * characters 3, between words 7. "PARIS" is the standard reference word at
 * 50 units, so words-per-minute = 60 / (50 * dt). The decoder only has to
 * recover dt and three gap classes to read a transmission back.
 */

namespace pwmradio {

namespace {

double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    return v[mid];
}

// Scores how well gap durations fit the 1/3/7 grid for a candidate dit.
// Gaps past 7 units are legal word gaps of any length and cost nothing.
double gap_fit_error(const std::vector<double>& gaps, double dit) {
    double err = 0.0;
    for (double g : gaps) {
        const double r = g / dit;
        double e = std::min(std::abs(std::log(r)), std::abs(std::log(r / 3.0)));
        e = std::min(e, r >= 7.0 ? 0.0 : std::abs(std::log(r / 7.0)));
        err += e;
    }
    return err;
}

// Recovers the dit time from mark/gap durations. Bimodal marks split into
// dit and dah clusters directly; when every mark has the same length the
// gaps decide whether they are dits or dahs.
double estimate_dit(const std::vector<double>& marks, const std::vector<double>& gaps) {
    const auto [lo, hi] = std::minmax_element(marks.begin(), marks.end());
    if (*hi > 2.0 * *lo) {
        const double split = 0.5 * (*lo + *hi);
        std::vector<double> dits;
        for (double m : marks) {
            if (m < split) {
                dits.push_back(m);
            }
        }
        return median(std::move(dits));
    }
    const double med = median(marks);
    if (gaps.empty()) {
        return med;
    }
    const double as_dit = gap_fit_error(gaps, med);
    const double as_dah = gap_fit_error(gaps, med / 3.0);
    return as_dah + 1e-9 < as_dit ? med / 3.0 : med;
}

std::string lookup_code(char c, const MorseTable& table) {
    const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const std::string* code = table.find(upper);
    if (code == nullptr) {
        throw std::invalid_argument(std::string("character not in the code table: '") +
                                    upper + "'");
    }
    return *code;
}

}  // namespace

double KeyingSchedule::duration() const {
    double sum = 0.0;
    double carry = 0.0;
    for (const auto& e : entries) {
        const double y = e.duration - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

const std::string* MorseTable::find(char c) const {
    const auto it = codes.find(c);
    return it == codes.end() ? nullptr : &it->second;
}

const MorseTable& standard_table() {
    static const MorseTable table{{
        {'A', ".-"},    {'B', "-..."},  {'C', "-.-."},  {'D', "-.."},
        {'E', "."},     {'F', "..-."},  {'G', "--."},   {'H', "...."},
        {'I', ".."},    {'J', ".---"},  {'K', "-.-"},   {'L', ".-.."},
        {'M', "--"},    {'N', "-."},    {'O', "---"},   {'P', ".--."},
        {'Q', "--.-"},  {'R', ".-."},   {'S', "..."},   {'T', "-"},
        {'U', "..-"},   {'V', "...-"},  {'W', ".--"},   {'X', "-..-"},
        {'Y', "-.--"},  {'Z', "--.."},
        {'0', "-----"}, {'1', ".----"}, {'2', "..---"}, {'3', "...--"},
        {'4', "....-"}, {'5', "....."}, {'6', "-...."}, {'7', "--..."},
        {'8', "---.."}, {'9', "----."},
        {'.', ".-.-.-"}, {',', "--..--"}, {'?', "..--.."}, {'\'', ".----."},
        {'!', "-.-.--"}, {'/', "-..-."},  {'(', "-.--."},  {')', "-.--.-"},
        {'&', ".-..."},  {':', "---..."}, {';', "-.-.-."}, {'=', "-...-"},
        {'+', ".-.-."},  {'-', "-....-"}, {'_', "..--.-"}, {'"', ".-..-."},
        {'$', "...-..-"}, {'@', ".--.-."},
        {' ', "/"},
    }};
    return table;
}

MorseTable shuffle_table(const MorseTable& table, std::uint64_t seed) {
    std::vector<char> chars;
    std::vector<std::string> codes;
    for (const auto& [c, code] : table.codes) {
        if (c == ' ') {
            continue;  // the word mark is structural, leave it alone
        }
        chars.push_back(c);
        codes.push_back(code);
    }
    // Fisher-Yates with an explicit draw so the permutation depends only on
    // the seed, not on a library's distribution internals.
    std::mt19937_64 rng(seed);
    for (std::size_t i = codes.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng() % i);
        std::swap(codes[i - 1], codes[j]);
    }
    MorseTable shuffled;
    for (std::size_t i = 0; i < chars.size(); ++i) {
        shuffled.codes[chars[i]] = codes[i];
    }
    if (const std::string* space = table.find(' ')) {
        shuffled.codes[' '] = *space;
    }
    return shuffled;
}

KeyingSchedule encode_listing(const std::string& text, double dt, const MorseTable& table) {
    if (dt <= 0.0) {
        throw std::invalid_argument("dt must be positive");
    }
    KeyingSchedule schedule;
    schedule.dit = dt;
    for (char ch : text) {
        for (char c : lookup_code(ch, table)) {
            if (c == '-') {
                schedule.entries.push_back({1, 3.0 * dt});
                schedule.entries.push_back({0, dt});
            } else if (c == '.') {
                schedule.entries.push_back({1, dt});
                schedule.entries.push_back({0, dt});
            } else if (c == '/') {
                schedule.entries.push_back({0, 6.0 * dt});
            }
        }
        schedule.entries.push_back({0, 2.0 * dt});
    }
    return schedule;
}

KeyingSchedule encode_canonical(const std::string& text, double dt, const MorseTable& table) {
    if (dt <= 0.0) {
        throw std::invalid_argument("dt must be positive");
    }
    KeyingSchedule schedule;
    schedule.dit = dt;
    const std::size_t n = text.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (text[i] == ' ') {
            continue;  // word boundaries are the gap after the previous character
        }
        const std::string code = lookup_code(text[i], table);
        for (std::size_t s = 0; s < code.size(); ++s) {
            if (s > 0) {
                schedule.entries.push_back({0, dt});
            }
            schedule.entries.push_back({1, code[s] == '-' ? 3.0 * dt : dt});
        }
        // 3 units to the next character, 7 when this character closes a
        // word, the trailing word included (PARIS accounting).
        std::size_t next = i + 1;
        while (next < n && text[next] == ' ') {
            ++next;
        }
        const bool word_final = next != i + 1 || next == n;
        schedule.entries.push_back({0, word_final ? 7.0 * dt : 3.0 * dt});
    }
    return schedule;
}

std::string decode_keying(const KeyingSchedule& schedule, std::optional<double> dt_hint,
                          const MorseTable& table, DecodeReport* report) {
    // Merge same-level runs first; the classifier assumes alternation.
    std::vector<KeyingEntry> runs;
    for (const auto& e : schedule.entries) {
        if (e.level != 0 && e.level != 1) {
            throw std::invalid_argument("keying level must be 0 or 1");
        }
        if (e.duration <= 0.0) {
            throw std::invalid_argument("keying duration must be positive");
        }
        if (!runs.empty() && runs.back().level == e.level) {
            runs.back().duration += e.duration;
        } else {
            runs.push_back(e);
        }
    }
    while (!runs.empty() && runs.front().level == 0) {
        runs.erase(runs.begin());
    }
    if (runs.empty()) {
        return "";
    }

    std::vector<double> marks;
    std::vector<double> gaps;  // everything after the first mark, trailing gap included
    for (const auto& r : runs) {
        (r.level == 1 ? marks : gaps).push_back(r.duration);
    }
    const double dit = dt_hint.value_or(estimate_dit(marks, gaps));
    if (dit <= 0.0) {
        throw std::invalid_argument("dit estimate must be positive");
    }

    std::map<std::string, char> inverse;
    for (const auto& [c, code] : table.codes) {
        if (c != ' ') {
            inverse.emplace(code, c);
        }
    }

    std::string text;
    std::string group;
    bool pending_space = false;
    auto flush = [&] {
        if (group.empty()) {
            return;
        }
        if (pending_space) {
            text += ' ';
            pending_space = false;
        }
        const auto it = inverse.find(group);
        if (it != inverse.end()) {
            text += it->second;
        } else {
            text += '?';
            if (report != nullptr) {
                ++report->unknown_groups;
            }
        }
        group.clear();
    };

    for (const auto& r : runs) {
        if (r.level == 1) {
            group += r.duration < 2.0 * dit ? '.' : '-';
        } else {
            if (r.duration < 1.5 * dit) {
                continue;  // gap inside a character
            }
            const bool word_gap = r.duration >= 5.0 * dit;
            flush();
            if (word_gap && !text.empty()) {
                pending_space = true;  // becomes a space only if more text follows
            }
        }
    }
    flush();
    return text;
}

std::string decode_audio(const SignalBuffer& audio, double tone,
                         std::optional<double> dt_hint, const MorseTable& table,
                         DecodeReport* report) {
    if (tone <= 0.0) {
        throw std::invalid_argument("tone must be positive");
    }
    if (audio.sample_rate < 4.0 * tone) {
        throw std::invalid_argument("audio sample rate must be at least 4x the tone");
    }
    const std::size_t n = audio.samples.size();
    const double window_s = dt_hint ? *dt_hint / 4.0 : 8.0 / tone;
    const auto window = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::llround(window_s * audio.sample_rate)));
    if (n < window) {
        return "";
    }
    const std::size_t hop = std::max<std::size_t>(1, window / 4);

    std::vector<double> level;
    for (std::size_t start = 0; start + window <= n; start += hop) {
        level.push_back(goertzel_amplitude(audio.samples, start, window, tone,
                                           audio.sample_rate));
    }
    if (level.empty()) {
        return "";
    }

    std::vector<double> sorted = level;
    std::sort(sorted.begin(), sorted.end());
    const double p95 = sorted[static_cast<std::size_t>(0.95 * static_cast<double>(sorted.size() - 1))];
    if (p95 < 1e-4) {
        return "";  // nothing resembling a tone
    }
    const double threshold = p95 / 2.0;

    KeyingSchedule schedule;
    const double hop_s = static_cast<double>(hop) / audio.sample_rate;
    for (double v : level) {
        const int on = v > threshold ? 1 : 0;
        if (!schedule.entries.empty() && schedule.entries.back().level == on) {
            schedule.entries.back().duration += hop_s;
        } else {
            schedule.entries.push_back({on, hop_s});
        }
    }
    return decode_keying(schedule, dt_hint, table, report);
}

}  // namespace pwmradio
