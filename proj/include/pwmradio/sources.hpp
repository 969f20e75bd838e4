#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pwmradio/transmitter.hpp"

namespace pwmradio {

// One sequencer note: ticks are the sequencer grid, pitch is scientific
// notation ("E5", "C#4"), instrument is carried through but not interpreted.
struct NoteEvent {
    long start_tick = 0;
    std::string pitch;
    long duration_ticks = 1;
    int instrument = 0;
};

struct RawAudioConfig {
    double pacing = 1.0 / 16000.0;  // seconds each byte is held
};

// Unsigned 8-bit PCM to duty commands: byte b becomes duty (b << 8) / 65536,
// held for cfg.pacing. Throws std::invalid_argument on empty input or a
// non-positive pacing.
ModulationStream raw_pcm_to_stream(const std::vector<std::uint8_t>& bytes,
                                   const RawAudioConfig& cfg = {});

// Unsigned 16-bit samples to duty commands: v / 65536, held 1/sample_rate.
ModulationStream live_stream(const std::vector<std::uint16_t>& samples,
                             double sample_rate);

// Equal-tempered pitch, A4 = 440 Hz. Accepts letter, optional '#' or 'b',
// octave; range A0 through C8. Throws std::invalid_argument otherwise.
double note_to_frequency(const std::string& pitch);

// Parses sequencer export text (after the fixed 25-character header and
// 2-character trailer are stripped): records are separated by ';', each one
// "start_tick pitch duration_ticks instrument". Empty records are skipped.
// A malformed record throws std::invalid_argument carrying its index and
// content. Output is sorted by start_tick.
std::vector<NoteEvent> parse_sequence(const std::string& text);

// Inverse of parse_sequence, for rewriting a sequence to disk.
std::string serialize_sequence(const std::vector<NoteEvent>& events);

// Renders the note timeline tick by tick. A tick with one active note plays
// its tone (duty switching at the note frequency); silence is zero duty.
// Chords are arpeggiated round-robin: with k notes the slices last
// 1/(arpeggio_rate*k) so the full chord cycles at arpeggio_rate.
// Throws std::invalid_argument on non-positive tick_seconds/arpeggio_rate,
// negative ticks, or an unparseable pitch. No events give an empty stream.
ModulationStream sequence_to_stream(const std::vector<NoteEvent>& events,
                                    double tick_seconds = 0.04,
                                    double arpeggio_rate = 100.0);

}  // namespace pwmradio
