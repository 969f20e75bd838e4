#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

#include "pwmradio/commands.hpp"

namespace {

void add_rf_flags(CLI::App* cmd, pwmradio::RfOptions& rf) {
    cmd->add_option("--scale", rf.scale,
                    "Divide the 31.25 MHz carrier by this for a desk-scale run");
    cmd->add_option("--rf-rate", rf.rf_rate, "RF sample rate in Hz");
    cmd->add_option("--carrier-duty", rf.carrier_duty, "Carrier duty cycle, 0..1");
    cmd->add_option("--tau", rf.tau, "Modulator coupling time constant in seconds");
}

void add_channel_flags(CLI::App* cmd, pwmradio::ChannelOptions& ch) {
    cmd->add_option("--gain", ch.gain, "Channel gain");
    cmd->add_option("--noise-rms", ch.noise_rms, "Added white noise RMS");
    cmd->add_option("--snr-db", ch.snr_db,
                    "Set the noise from a target SNR instead of --noise-rms");
    cmd->add_option("--seed", ch.seed, "Noise generator seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PWM AM radio bench: synthesize, key, degrade, and decode"};
    app.require_subcommand(1);

    pwmradio::SweepOptions sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Stepped audio-tone sweep");
    sweep_cmd->add_option("--out", sweep.out_path, "Output file (.wav or raw f32)")
        ->required();
    sweep_cmd->add_flag("--demodulate", sweep.demodulate,
                        "Write receiver audio instead of RF");
    sweep_cmd->add_option("--steps", sweep.steps, "Number of sweep steps");
    sweep_cmd->add_option("--base", sweep.base, "First tone frequency in Hz");
    sweep_cmd->add_option("--increment", sweep.increment, "Per-step increase in Hz");
    sweep_cmd->add_option("--step-hold", sweep.step_hold, "Seconds per step");
    sweep_cmd->add_option("--tone-duty", sweep.tone_duty, "Tone on-fraction, 0..1");
    sweep_cmd->add_option("--bandwidth", sweep.bandwidth, "Receiver passband in Hz");
    sweep_cmd->add_option("--audio-rate", sweep.audio_rate, "Receiver audio rate in Hz");
    add_rf_flags(sweep_cmd, sweep.rf);
    add_channel_flags(sweep_cmd, sweep.channel);

    pwmradio::MorseTxOptions morse;
    CLI::App* morse_cmd = app.add_subcommand("morse-tx", "Key text as CW");
    morse_cmd->add_option("text", morse.text, "Message to key")->required();
    morse_cmd->add_option("--dt", morse.dt, "Dit time in seconds");
    morse_cmd->add_option("--tone", morse.tone, "Modulator tone in Hz");
    morse_cmd->add_option("--tone-duty", morse.tone_duty, "Tone on-fraction, 0..1");
    morse_cmd->add_flag("--listing", morse.listing_timing,
                        "Translation-loop timing instead of standard weighting");
    morse_cmd->add_option("--shuffle-seed", morse.shuffle_seed,
                          "Permute the code table with this seed");
    morse_cmd->add_flag("--print-schedule", morse.print_schedule,
                        "Print the keying schedule CSV to stdout");
    morse_cmd->add_option("--repeat", morse.repeat, "Send the message this many times");
    morse_cmd->add_option("--out", morse.out_path, "Output file (.wav or raw f32)");
    morse_cmd->add_flag("--demodulate", morse.demodulate,
                        "Write receiver audio instead of RF");
    morse_cmd->add_option("--udp-host", morse.udp_host,
                          "Stream demodulated audio datagrams to this host");
    morse_cmd->add_option("--udp-port", morse.udp_port, "UDP port");
    morse_cmd->add_option("--throttle-ms", morse.throttle_ms,
                          "Pause between datagrams in milliseconds");
    morse_cmd->add_option("--bandwidth", morse.bandwidth, "Receiver passband in Hz");
    morse_cmd->add_option("--audio-rate", morse.audio_rate, "Receiver audio rate in Hz");
    add_rf_flags(morse_cmd, morse.rf);
    add_channel_flags(morse_cmd, morse.channel);

    pwmradio::ListenOptions listen;
    CLI::App* listen_cmd = app.add_subcommand("listen", "Receive audio datagrams and decode");
    listen_cmd->add_option("--port", listen.port, "UDP port to bind");
    listen_cmd->add_option("--wire-rate", listen.wire_rate, "Datagram sample rate in Hz");
    listen_cmd->add_option("--decode-rate", listen.decode_rate,
                           "Resample to this rate before decoding");
    listen_cmd->add_flag("!--no-decode", listen.decode, "Collect audio only");
    listen_cmd->add_option("--tone", listen.tone, "CW tone in Hz");
    listen_cmd->add_option("--dt", listen.dt, "Dit time hint in seconds");
    listen_cmd->add_option("--idle-timeout", listen.idle_timeout,
                           "Exit after this many silent seconds");
    listen_cmd->add_option("--max-seconds", listen.max_seconds,
                           "Hard stop after this long, 0 for none");
    listen_cmd->add_option("--dump", listen.dump_path, "Also write received audio here");

    pwmradio::PlayOptions play;
    CLI::App* play_cmd = app.add_subcommand("play", "Transmit PCM or a note sequence");
    play_cmd->add_option("file", play.in_path, "Input file, '-' for stdin with u16")
        ->required();
    play_cmd->add_option("--format", play.format, "u8, u16, or sequence");
    play_cmd->add_option("--sample-rate", play.sample_rate, "PCM rate in Hz");
    play_cmd->add_option("--pacing-us", play.pacing_us,
                         "Hold each PCM sample this many microseconds");
    play_cmd->add_option("--tick-seconds", play.tick_seconds, "Sequence grid tick");
    play_cmd->add_option("--arpeggio-rate", play.arpeggio_rate,
                         "Chord cycling rate in Hz");
    play_cmd->add_option("--out", play.out_path, "Output file (.wav or raw f32)")
        ->required();
    play_cmd->add_flag("--demodulate", play.demodulate,
                       "Write receiver audio instead of RF");
    play_cmd->add_option("--bandwidth", play.bandwidth, "Receiver passband in Hz");
    play_cmd->add_option("--audio-rate", play.audio_rate, "Receiver audio rate in Hz");
    add_rf_flags(play_cmd, play.rf);
    add_channel_flags(play_cmd, play.channel);

    pwmradio::SpectrumOptions spectrum;
    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "Harmonic table of a recorded signal");
    spectrum_cmd->add_option("file", spectrum.in_path, "Input .wav or raw f32")
        ->required();
    spectrum_cmd->add_option("--rate", spectrum.rate, "Sample rate for raw input");
    spectrum_cmd->add_option("--fundamental", spectrum.fundamental,
                             "Fundamental frequency in Hz")
        ->required();
    spectrum_cmd->add_option("--harmonics", spectrum.harmonics, "How many harmonics");
    spectrum_cmd->add_option("--fft-length", spectrum.fft_length,
                             "Analysis length, 0 for the whole file");
    spectrum_cmd->add_flag("--hann", spectrum.hann, "Hann window instead of rectangular");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return pwmradio::kExitUsage;
    }

    if (sweep_cmd->parsed()) {
        return pwmradio::run_sweep(sweep, std::cerr);
    }
    if (morse_cmd->parsed()) {
        return pwmradio::run_morse_tx(morse, std::cout, std::cerr);
    }
    if (listen_cmd->parsed()) {
        return pwmradio::run_listen(listen, std::cout, std::cerr);
    }
    if (play_cmd->parsed()) {
        return pwmradio::run_play(play, std::cerr);
    }
    if (spectrum_cmd->parsed()) {
        return pwmradio::run_spectrum(spectrum, std::cout, std::cerr);
    }
    return pwmradio::kExitUsage;
}
