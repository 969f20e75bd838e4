#include "pwmradio/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace pwmradio {

namespace {

void put_u32(std::string& s, std::uint32_t v) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
    s.push_back(static_cast<char>((v >> 16) & 0xff));
    s.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16(std::string& s, std::uint16_t v) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint16_t get_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

std::int16_t quantize(double x) {
    const double clipped = std::clamp(x, -1.0, 1.0);
    return static_cast<std::int16_t>(std::lround(clipped * 32767.0));
}

}  // namespace

void write_wav(const std::string& path, const SignalBuffer& buf) {
    const auto rate = static_cast<std::uint32_t>(std::lround(buf.sample_rate));
    if (rate == 0) {
        throw IoError("WAV needs a positive integral sample rate");
    }
    const std::uint32_t data_size = static_cast<std::uint32_t>(buf.samples.size()) * 2;

    std::string header;
    header.reserve(44);
    header += "RIFF";
    put_u32(header, 36 + data_size);
    header += "WAVEfmt ";
    put_u32(header, 16);
    put_u16(header, 1);  // PCM
    put_u16(header, 1);  // mono
    put_u32(header, rate);
    put_u32(header, rate * 2);
    put_u16(header, 2);
    put_u16(header, 16);
    header += "data";
    put_u32(header, data_size);

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open for writing: " + path);
    }
    file.write(header.data(), static_cast<std::streamsize>(header.size()));
    for (double x : buf.samples) {
        const std::int16_t v = quantize(x);
        const char bytes[2] = {static_cast<char>(v & 0xff),
                               static_cast<char>((v >> 8) & 0xff)};
        file.write(bytes, 2);
    }
    if (!file) {
        throw IoError("write failed: " + path);
    }
}

SignalBuffer read_wav(const std::string& path) {
    const std::vector<std::uint8_t> bytes = read_bytes(path);
    if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw IoError("not a RIFF/WAVE file: " + path);
    }

    SignalBuffer buf;
    bool have_fmt = false;
    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::uint32_t chunk_size = get_u32(bytes.data() + pos + 4);
        const std::uint8_t* body = bytes.data() + pos + 8;
        if (pos + 8 + chunk_size > bytes.size()) {
            throw IoError("truncated WAV chunk: " + path);
        }
        if (std::memcmp(bytes.data() + pos, "fmt ", 4) == 0) {
            if (chunk_size < 16) {
                throw IoError("short fmt chunk: " + path);
            }
            if (get_u16(body) != 1 || get_u16(body + 2) != 1 || get_u16(body + 14) != 16) {
                throw IoError("only 16-bit PCM mono is supported: " + path);
            }
            buf.sample_rate = get_u32(body + 4);
            have_fmt = true;
        } else if (std::memcmp(bytes.data() + pos, "data", 4) == 0) {
            if (!have_fmt) {
                throw IoError("WAV data before fmt: " + path);
            }
            buf.samples.reserve(chunk_size / 2);
            for (std::uint32_t i = 0; i + 1 < chunk_size; i += 2) {
                const auto v = static_cast<std::int16_t>(get_u16(body + i));
                buf.samples.push_back(static_cast<double>(v) / 32767.0);
            }
            return buf;
        }
        pos += 8 + chunk_size + (chunk_size % 2);  // chunks are word aligned
    }
    throw IoError("WAV has no data chunk: " + path);
}

void write_raw_f32(const std::string& path, const SignalBuffer& buf) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open for writing: " + path);
    }
    for (double x : buf.samples) {
        const auto v = static_cast<float>(x);
        file.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
    if (!file) {
        throw IoError("write failed: " + path);
    }
}

SignalBuffer read_raw_f32(const std::string& path, double sample_rate) {
    if (sample_rate <= 0.0) {
        throw IoError("raw input needs a positive sample rate");
    }
    const std::vector<std::uint8_t> bytes = read_bytes(path);
    if (bytes.size() % sizeof(float) != 0) {
        throw IoError("raw float file size is not a multiple of 4: " + path);
    }
    SignalBuffer buf;
    buf.sample_rate = sample_rate;
    buf.samples.resize(bytes.size() / sizeof(float));
    for (std::size_t i = 0; i < buf.samples.size(); ++i) {
        float v = 0.0f;
        std::memcpy(&v, bytes.data() + i * sizeof(float), sizeof v);
        buf.samples[i] = v;
    }
    return buf;
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open: " + path);
    }
    std::vector<std::uint8_t> bytes;
    char c = 0;
    while (file.get(c)) {
        bytes.push_back(static_cast<std::uint8_t>(c));
    }
    if (file.bad()) {
        throw IoError("read failed: " + path);
    }
    return bytes;
}

std::string read_text(const std::string& path) {
    const std::vector<std::uint8_t> bytes = read_bytes(path);
    return {bytes.begin(), bytes.end()};
}

std::vector<std::uint16_t> bytes_to_u16le(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() % 2 != 0) {
        throw IoError("u16 input has an odd number of bytes");
    }
    std::vector<std::uint16_t> out(bytes.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = get_u16(bytes.data() + i * 2);
    }
    return out;
}

std::vector<std::uint8_t> to_s16le(const std::vector<double>& samples) {
    std::vector<std::uint8_t> out;
    out.reserve(samples.size() * 2);
    for (double x : samples) {
        const std::int16_t v = quantize(x);
        out.push_back(static_cast<std::uint8_t>(v & 0xff));
        out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    }
    return out;
}

std::vector<double> from_s16le(const std::uint8_t* data, std::size_t size) {
    std::vector<double> out;
    out.reserve(size / 2);
    for (std::size_t i = 0; i + 1 < size; i += 2) {
        const auto v = static_cast<std::int16_t>(get_u16(data + i));
        out.push_back(static_cast<double>(v) / 32767.0);
    }
    return out;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spec) {
    out << "frequency_hz,magnitude\n" << std::setprecision(12);
    for (std::size_t k = 0; k < spec.bin_magnitudes.size(); ++k) {
        out << static_cast<double>(k) * spec.bin_width << ',' << spec.bin_magnitudes[k]
            << '\n';
    }
}

namespace {

// Shared two-column CSV scaffolding for the stream and schedule forms.
void write_rows(std::ostream& out, const char* header,
                const std::vector<std::pair<double, double>>& rows) {
    out << header << '\n' << std::setprecision(17);
    for (const auto& [a, b] : rows) {
        out << a << ',' << b << '\n';
    }
}

std::vector<std::pair<double, double>> read_rows(std::istream& in, const char* header) {
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw IoError(std::string("expected CSV header '") + header + "'");
    }
    std::vector<std::pair<double, double>> rows;
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) {
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw IoError("CSV line " + std::to_string(number) + " has no comma");
        }
        try {
            std::size_t used = 0;
            const double a = std::stod(line.substr(0, comma), &used);
            const double b = std::stod(line.substr(comma + 1), &used);
            rows.emplace_back(a, b);
        } catch (const std::exception&) {
            throw IoError("CSV line " + std::to_string(number) + " is not numeric: '" +
                          line + "'");
        }
    }
    return rows;
}

}  // namespace

void write_stream_csv(std::ostream& out, const ModulationStream& stream) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(stream.commands.size());
    for (const auto& c : stream.commands) {
        rows.emplace_back(c.duty, c.hold);
    }
    write_rows(out, "duty,hold_seconds", rows);
}

ModulationStream read_stream_csv(std::istream& in) {
    ModulationStream stream;
    for (const auto& [duty, hold] : read_rows(in, "duty,hold_seconds")) {
        stream.commands.push_back({duty, hold});
    }
    return stream;
}

void write_schedule_csv(std::ostream& out, const KeyingSchedule& schedule) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(schedule.entries.size());
    for (const auto& e : schedule.entries) {
        rows.emplace_back(e.level, e.duration);
    }
    write_rows(out, "level,duration_s", rows);
}

KeyingSchedule read_schedule_csv(std::istream& in) {
    KeyingSchedule schedule;
    for (const auto& [level, duration] : read_rows(in, "level,duration_s")) {
        schedule.entries.push_back({static_cast<int>(level), duration});
    }
    return schedule;
}

}  // namespace pwmradio
