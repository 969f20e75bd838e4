#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwmradio/morse.hpp"
#include "pwmradio/signal.hpp"
#include "pwmradio/spectrum.hpp"
#include "pwmradio/transmitter.hpp"

namespace pwmradio {

// File problems (open failure, short read, bad header) throw IoError.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 16-bit PCM mono WAV. Samples are clipped to [-1,1] and scaled by 32767 on
// write, divided by 32767 on read. The writer emits a fixed 44-byte header,
// no metadata chunks, so identical buffers give identical files.
void write_wav(const std::string& path, const SignalBuffer& buf);
SignalBuffer read_wav(const std::string& path);

// Headerless little-endian 32-bit float mono. The rate is not stored, the
// reader takes it as a parameter.
void write_raw_f32(const std::string& path, const SignalBuffer& buf);
SignalBuffer read_raw_f32(const std::string& path, double sample_rate);

std::vector<std::uint8_t> read_bytes(const std::string& path);
std::string read_text(const std::string& path);

// Little-endian u16 pairs from a byte blob (odd trailing byte is an error).
std::vector<std::uint16_t> bytes_to_u16le(const std::vector<std::uint8_t>& bytes);

// Signed 16-bit little-endian conversion used for the audio wire format.
std::vector<std::uint8_t> to_s16le(const std::vector<double>& samples);
std::vector<double> from_s16le(const std::uint8_t* data, std::size_t size);

// CSV forms. Readers validate headers and field counts and throw IoError.
void write_spectrum_csv(std::ostream& out, const Spectrum& spec);                // frequency_hz,magnitude
void write_stream_csv(std::ostream& out, const ModulationStream& stream);       // duty,hold_seconds
ModulationStream read_stream_csv(std::istream& in);
void write_schedule_csv(std::ostream& out, const KeyingSchedule& schedule);     // level,duration_s
KeyingSchedule read_schedule_csv(std::istream& in);

}  // namespace pwmradio
