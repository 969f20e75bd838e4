#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace pwmradio {

// Process exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,    // bad flags or rejected configuration
    kExitIo = 2,       // file or socket failure
    kExitEmpty = 3,    // decoding was requested and produced nothing
};

// The full-scale carrier that --scale divides down for desk-size runs.
inline constexpr double kNominalCarrierHz = 31.25e6;

struct ChannelOptions {
    double gain = 1.0;
    double noise_rms = 0.0;            // ignored when snr_db is set
    std::optional<double> snr_db;      // noise level derived from signal RMS
    std::uint64_t seed = 0;
};

struct RfOptions {
    double scale = 250.0;              // carrier = 31.25 MHz / scale
    double rf_rate = 1e6;              // Hz
    double carrier_duty = 0.5;
    double tau = 1e-3;                 // coupling time constant, seconds
};

struct SweepOptions {
    std::string out_path;              // .wav or .f32 raw
    bool demodulate = false;           // write receiver audio instead of RF
    int steps = 100;
    double base = 200.0;
    double increment = 10.0;
    double step_hold = 0.01;
    double tone_duty = 0.5;
    RfOptions rf{.carrier_duty = 0.25};
    ChannelOptions channel;
    double bandwidth = 80000.0;        // receiver passband when demodulating
    double audio_rate = 48000.0;
};

struct MorseTxOptions {
    std::string text;
    double dt = 0.05;
    double tone = 600.0;
    double tone_duty = 0.5;
    bool listing_timing = false;       // use the translation-loop gaps
    std::optional<std::uint64_t> shuffle_seed;
    bool print_schedule = false;
    int repeat = 1;
    std::string out_path;              // RF (or audio with demodulate) file
    bool demodulate = false;
    std::string udp_host;              // when set, stream audio datagrams
    int udp_port = 7355;
    double throttle_ms = 1.0;          // pause between datagrams
    RfOptions rf;
    ChannelOptions channel;
    double bandwidth = 3000.0;
    double audio_rate = 48000.0;
};

struct ListenOptions {
    int port = 7355;
    double wire_rate = 48000.0;        // datagram payload rate
    double decode_rate = 22000.0;      // resampled before the decoder
    bool decode = true;
    double tone = 600.0;
    std::optional<double> dt;
    double idle_timeout = 5.0;         // seconds of silence before exit
    double max_seconds = 0.0;          // hard stop, 0 means none
    std::string dump_path;             // optional received-audio WAV
};

struct PlayOptions {
    std::string in_path;               // "-" reads stdin (u16 format only)
    std::string format = "u8";         // u8 | u16 | sequence
    double sample_rate = 16000.0;      // u8/u16 pacing = 1/sample_rate
    std::optional<double> pacing_us;   // overrides the pacing
    double tick_seconds = 0.04;        // sequence grid
    double arpeggio_rate = 100.0;
    std::string out_path;
    bool demodulate = false;
    RfOptions rf{.carrier_duty = 0.25};
    ChannelOptions channel;
    double bandwidth = 20000.0;
    double audio_rate = 48000.0;
};

struct SpectrumOptions {
    std::string in_path;               // .wav, or raw f32 with --rate
    double rate = 0.0;
    double fundamental = 0.0;
    int harmonics = 7;
    std::size_t fft_length = 0;        // 0 uses the whole buffer
    bool hann = false;
};

// Each runner validates its configuration before writing anything and maps
// errors to the exit codes above, reporting the cause on `err`.
int run_sweep(const SweepOptions& opt, std::ostream& err);
int run_morse_tx(const MorseTxOptions& opt, std::ostream& out, std::ostream& err);
int run_listen(const ListenOptions& opt, std::ostream& out, std::ostream& err);
int run_play(const PlayOptions& opt, std::ostream& err);
int run_spectrum(const SpectrumOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace pwmradio
