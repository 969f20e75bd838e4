#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pwmradio/signal.hpp"

namespace pwmradio {

// One keying interval: level is 1 (carrier keyed on) or 0 (silence).
struct KeyingEntry {
    int level = 0;
    double duration = 0.0;  // seconds
};

// On/off keying timeline plus the dit time it was built from (0 when the
// schedule came from a decoder and dt was estimated).
struct KeyingSchedule {
    std::vector<KeyingEntry> entries;
    double dit = 0.0;  // seconds

    double duration() const;
};

// Character -> dot/dash string ('.' and '-'; ' ' maps to the "/" word mark).
struct MorseTable {
    std::map<char, std::string> codes;

    const std::string* find(char c) const;
};

const MorseTable& standard_table();

// Deterministic reshuffle: permutes the code strings among the characters
// (the ' ' entry stays put). Same seed, same table; every code survives, so
// decoding with the same shuffled table still inverts encoding with it.
MorseTable shuffle_table(const MorseTable& table, std::uint64_t seed);

// Counters filled in by the decoders.
struct DecodeReport {
    int unknown_groups = 0;  // code groups replaced by '?'
};

// Keys text the way a straight translation loop does: a dah is on for 3*dt
// then off for dt, a dit on for dt then off for dt, the word mark '/' is
// 6*dt of silence, and every character gets 2*dt of extra silence appended.
// Case-insensitive; a character missing from the table throws
// std::invalid_argument naming it. Empty text gives an empty schedule.
KeyingSchedule encode_listing(const std::string& text, double dt,
                              const MorseTable& table = standard_table());

// Standard weighting: marks of 1 or 3 units separated by 1 unit, 3 units
// after a character, 7 after a word, including after the final word so that
// "PARIS" comes to exactly 50 units. Runs of spaces collapse to one word
// boundary. Same error behavior as encode_listing.
KeyingSchedule encode_canonical(const std::string& text, double dt,
                                const MorseTable& table = standard_table());

// Reads text back out of a keying timeline. Marks shorter than 2 dits are
// dots; gaps split at 1.5 dits (intra-character) and 5 dits (word). When
// dt_hint is absent the unit is estimated from the mark/gap durations, which
// tolerates around +-20% timing jitter. Unknown code groups become '?' and
// are counted in `report` when given.
std::string decode_keying(const KeyingSchedule& schedule,
                          std::optional<double> dt_hint = std::nullopt,
                          const MorseTable& table = standard_table(),
                          DecodeReport* report = nullptr);

// Full audio decoder: a sliding tone-energy detector (window about a quarter
// dit, threshold at half the 95th percentile of the detector output) turns
// the audio into a keying schedule, which decode_keying translates. Returns
// "" for silence. Throws std::invalid_argument when sample_rate < 4 * tone.
std::string decode_audio(const SignalBuffer& audio, double tone,
                         std::optional<double> dt_hint = std::nullopt,
                         const MorseTable& table = standard_table(),
                         DecodeReport* report = nullptr);

}  // namespace pwmradio
