#include "pwmradio/commands.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "pwmradio/channel.hpp"
#include "pwmradio/io.hpp"
#include "pwmradio/morse.hpp"
#include "pwmradio/receiver.hpp"
#include "pwmradio/signal.hpp"
#include "pwmradio/sources.hpp"
#include "pwmradio/spectrum.hpp"
#include "pwmradio/transmitter.hpp"

namespace pwmradio {

namespace {

constexpr std::size_t kDatagramSamples = 480;  // 10 ms at the 48 kHz wire rate

int guard(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

TransmitterConfig make_tx_config(const RfOptions& rf) {
    if (rf.scale <= 0.0) {
        throw std::invalid_argument("--scale must be positive");
    }
    TransmitterConfig cfg;
    cfg.carrier.frequency = kNominalCarrierHz / rf.scale;
    cfg.carrier.duty = rf.carrier_duty;
    cfg.carrier.low_level = -1.0;
    cfg.carrier.high_level = 1.0;
    cfg.coupling_tau = rf.tau;
    cfg.rf_sample_rate = rf.rf_rate;
    return cfg;
}

double buffer_rms(const SignalBuffer& buf) {
    double acc = 0.0;
    for (double x : buf.samples) {
        acc += x * x;
    }
    return buf.samples.empty() ? 0.0
                               : std::sqrt(acc / static_cast<double>(buf.samples.size()));
}

SignalBuffer degrade(const SignalBuffer& rf, const ChannelOptions& opt) {
    ChannelConfig cfg;
    cfg.gain = opt.gain;
    cfg.seed = opt.seed;
    cfg.noise_rms = opt.noise_rms;
    if (opt.snr_db) {
        cfg.noise_rms = buffer_rms(rf) / std::pow(10.0, *opt.snr_db / 20.0);
    }
    return apply_channel(rf, cfg);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// WAV or headerless f32 by extension.
void write_signal(const std::string& path, const SignalBuffer& buf) {
    if (ends_with(path, ".wav")) {
        write_wav(path, buf);
    } else {
        write_raw_f32(path, buf);
    }
}

SignalBuffer read_signal(const std::string& path, double raw_rate) {
    if (ends_with(path, ".wav")) {
        return read_wav(path);
    }
    return read_raw_f32(path, raw_rate);
}

// Bounded handoff between the receive loop and the decode stage.
class PayloadQueue {
public:
    explicit PayloadQueue(std::size_t cap) : cap_(cap) {}

    void push(std::vector<double> payload) {
        std::unique_lock lock(mutex_);
        not_full_.wait(lock, [this] { return items_.size() < cap_; });
        items_.push_back(std::move(payload));
        lock.unlock();
        not_empty_.notify_one();
    }

    void close() {
        {
            std::lock_guard lock(mutex_);
            closed_ = true;
        }
        not_empty_.notify_all();
    }

    bool pop(std::vector<double>& payload) {
        std::unique_lock lock(mutex_);
        not_empty_.wait(lock, [this] { return closed_ || !items_.empty(); });
        if (items_.empty()) {
            return false;
        }
        payload = std::move(items_.front());
        items_.pop_front();
        lock.unlock();
        not_full_.notify_one();
        return true;
    }

private:
    std::mutex mutex_;
    std::condition_variable not_full_;
    std::condition_variable not_empty_;
    std::deque<std::vector<double>> items_;
    std::size_t cap_;
    bool closed_ = false;
};

struct SocketGuard {
    int fd = -1;
    ~SocketGuard() {
        if (fd >= 0) {
            ::close(fd);
        }
    }
};

}  // namespace

int run_sweep(const SweepOptions& opt, std::ostream& err) {
    return guard(err, [&] {
        if (opt.out_path.empty()) {
            throw std::invalid_argument("--out is required");
        }
        const ModulationStream stream = sweep_stream(opt.steps, opt.base, opt.increment,
                                                     opt.step_hold, opt.tone_duty);
        const TransmitterConfig tx = make_tx_config(opt.rf);
        SignalBuffer rf = degrade(am_transmit(tx, stream), opt.channel);
        if (opt.demodulate) {
            TunerConfig tuner;
            tuner.center = tx.carrier.frequency;
            tuner.bandwidth = opt.bandwidth;
            write_signal(opt.out_path, tune_am(rf, tuner, opt.audio_rate));
        } else {
            write_signal(opt.out_path, rf);
        }
        return kExitOk;
    });
}

int run_morse_tx(const MorseTxOptions& opt, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        if (opt.out_path.empty() && opt.udp_host.empty()) {
            throw std::invalid_argument("one of --out or --udp-host is required");
        }
        if (opt.repeat < 1) {
            throw std::invalid_argument("--repeat must be >= 1");
        }
        const MorseTable table = opt.shuffle_seed
                                     ? shuffle_table(standard_table(), *opt.shuffle_seed)
                                     : standard_table();
        KeyingSchedule schedule = opt.listing_timing
                                      ? encode_listing(opt.text, opt.dt, table)
                                      : encode_canonical(opt.text, opt.dt, table);
        const std::size_t once = schedule.entries.size();
        for (int r = 1; r < opt.repeat; ++r) {
            schedule.entries.insert(schedule.entries.end(), schedule.entries.begin(),
                                    schedule.entries.begin() + static_cast<std::ptrdiff_t>(once));
        }
        if (opt.print_schedule) {
            write_schedule_csv(out, schedule);
        }

        const TransmitterConfig tx = make_tx_config(opt.rf);
        if (schedule.entries.empty()) {
            // Nothing keyed; still honor --out so pipelines see a valid file.
            if (!opt.out_path.empty()) {
                SignalBuffer empty;
                empty.sample_rate = opt.demodulate ? opt.audio_rate : tx.rf_sample_rate;
                write_signal(opt.out_path, empty);
            }
            return kExitOk;
        }

        const ModulationStream stream = keying_to_stream(schedule, opt.tone, opt.tone_duty);
        SignalBuffer rf = degrade(am_transmit(tx, stream), opt.channel);

        if (!opt.udp_host.empty()) {
            TunerConfig tuner;
            tuner.center = tx.carrier.frequency;
            tuner.bandwidth = opt.bandwidth;
            const SignalBuffer audio = tune_am(rf, tuner, opt.audio_rate);
            const std::vector<std::uint8_t> wire = to_s16le(audio.samples);

            addrinfo hints{};
            hints.ai_family = AF_INET;
            hints.ai_socktype = SOCK_DGRAM;
            addrinfo* res = nullptr;
            const std::string port = std::to_string(opt.udp_port);
            if (getaddrinfo(opt.udp_host.c_str(), port.c_str(), &hints, &res) != 0 ||
                res == nullptr) {
                throw IoError("cannot resolve " + opt.udp_host + ":" + port);
            }
            SocketGuard sock{::socket(res->ai_family, res->ai_socktype, res->ai_protocol)};
            if (sock.fd < 0) {
                freeaddrinfo(res);
                throw IoError("cannot open UDP socket");
            }
            const std::size_t bytes_per_packet = kDatagramSamples * 2;
            for (std::size_t pos = 0; pos < wire.size(); pos += bytes_per_packet) {
                const std::size_t len = std::min(bytes_per_packet, wire.size() - pos);
                if (::sendto(sock.fd, wire.data() + pos, len, 0, res->ai_addr,
                             res->ai_addrlen) < 0) {
                    freeaddrinfo(res);
                    throw IoError("UDP send failed");
                }
                if (opt.throttle_ms > 0.0) {
                    std::this_thread::sleep_for(std::chrono::microseconds(
                        std::llround(opt.throttle_ms * 1000.0)));
                }
            }
            freeaddrinfo(res);
            return kExitOk;
        }

        if (opt.demodulate) {
            TunerConfig tuner;
            tuner.center = tx.carrier.frequency;
            tuner.bandwidth = opt.bandwidth;
            write_signal(opt.out_path, tune_am(rf, tuner, opt.audio_rate));
        } else {
            write_signal(opt.out_path, rf);
        }
        return kExitOk;
    });
}

int run_listen(const ListenOptions& opt, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        if (opt.port < 0 || opt.port > 65535) {
            throw std::invalid_argument("--port out of range");
        }
        if (opt.idle_timeout <= 0.0) {
            throw std::invalid_argument("--idle-timeout must be positive");
        }
        SocketGuard sock{::socket(AF_INET, SOCK_DGRAM, 0)};
        if (sock.fd < 0) {
            throw IoError("cannot open UDP socket");
        }
        const int reuse = 1;
        ::setsockopt(sock.fd, SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof reuse);
        const int rcvbuf = 1 << 21;
        ::setsockopt(sock.fd, SOL_SOCKET, SO_RCVBUF, &rcvbuf, sizeof rcvbuf);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_addr.s_addr = htonl(INADDR_ANY);
        addr.sin_port = htons(static_cast<std::uint16_t>(opt.port));
        if (::bind(sock.fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
            throw IoError("cannot bind UDP port " + std::to_string(opt.port));
        }

        PayloadQueue queue(1024);
        std::vector<double> received;
        std::size_t malformed = 0;
        std::thread collector([&queue, &received] {
            std::vector<double> payload;
            while (queue.pop(payload)) {
                received.insert(received.end(), payload.begin(), payload.end());
            }
        });

        using clock = std::chrono::steady_clock;
        const auto start = clock::now();
        auto last_data = start;
        std::vector<std::uint8_t> buf(1 << 16);
        for (;;) {
            pollfd pfd{sock.fd, POLLIN, 0};
            const int ready = ::poll(&pfd, 1, 50);
            const auto now = clock::now();
            const double idle = std::chrono::duration<double>(now - last_data).count();
            const double total = std::chrono::duration<double>(now - start).count();
            if (ready > 0 && (pfd.revents & POLLIN) != 0) {
                const ssize_t n = ::recvfrom(sock.fd, buf.data(), buf.size(), 0, nullptr,
                                             nullptr);
                if (n > 0) {
                    if (n % 2 != 0) {
                        ++malformed;  // not whole 16-bit samples, skip it
                    } else {
                        queue.push(from_s16le(buf.data(), static_cast<std::size_t>(n)));
                        last_data = now;
                    }
                }
            } else if (idle >= opt.idle_timeout) {
                break;
            }
            if (opt.max_seconds > 0.0 && total >= opt.max_seconds) {
                break;
            }
        }
        queue.close();
        collector.join();

        if (malformed > 0) {
            err << malformed << " malformed datagrams skipped\n";
        }
        SignalBuffer audio;
        audio.sample_rate = opt.wire_rate;
        audio.samples = std::move(received);
        if (!opt.dump_path.empty()) {
            write_signal(opt.dump_path, audio);
        }
        if (!opt.decode) {
            return kExitOk;
        }
        const SignalBuffer narrow = resample(audio, opt.decode_rate);
        const std::string text = decode_audio(narrow, opt.tone, opt.dt);
        if (text.empty()) {
            return kExitEmpty;
        }
        out << text << '\n';
        return kExitOk;
    });
}

int run_play(const PlayOptions& opt, std::ostream& err) {
    return guard(err, [&] {
        if (opt.out_path.empty()) {
            throw std::invalid_argument("--out is required");
        }
        if (opt.sample_rate <= 0.0) {
            throw std::invalid_argument("--sample-rate must be positive");
        }

        ModulationStream stream;
        bool empty_ok = false;
        if (opt.format == "u8" || opt.format == "u16") {
            std::vector<std::uint8_t> bytes;
            if (opt.in_path == "-") {
                char c = 0;
                while (std::cin.get(c)) {
                    bytes.push_back(static_cast<std::uint8_t>(c));
                }
            } else {
                bytes = read_bytes(opt.in_path);
            }
            const double pacing =
                opt.pacing_us ? *opt.pacing_us * 1e-6 : 1.0 / opt.sample_rate;
            if (opt.format == "u8") {
                stream = raw_pcm_to_stream(bytes, {pacing});
            } else {
                stream = live_stream(bytes_to_u16le(bytes), 1.0 / pacing);
            }
        } else if (opt.format == "sequence") {
            const std::string text = read_text(opt.in_path);
            if (text.size() < 27) {
                throw IoError("sequence file shorter than its header and trailer");
            }
            // The export wraps the records in a 25-character header and a
            // 2-character trailer.
            const std::vector<NoteEvent> events =
                parse_sequence(text.substr(25, text.size() - 27));
            stream = sequence_to_stream(events, opt.tick_seconds, opt.arpeggio_rate);
            empty_ok = true;
        } else {
            throw std::invalid_argument("--format must be u8, u16, or sequence");
        }

        const TransmitterConfig tx = make_tx_config(opt.rf);
        if (stream.commands.empty()) {
            if (!empty_ok) {
                throw std::invalid_argument("nothing to play");
            }
            SignalBuffer empty;
            empty.sample_rate = opt.demodulate ? opt.audio_rate : tx.rf_sample_rate;
            write_signal(opt.out_path, empty);
            return kExitOk;
        }
        SignalBuffer rf = degrade(am_transmit(tx, stream), opt.channel);
        if (opt.demodulate) {
            TunerConfig tuner;
            tuner.center = tx.carrier.frequency;
            tuner.bandwidth = opt.bandwidth;
            write_signal(opt.out_path, tune_am(rf, tuner, opt.audio_rate));
        } else {
            write_signal(opt.out_path, rf);
        }
        return kExitOk;
    });
}

int run_spectrum(const SpectrumOptions& opt, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        if (opt.fundamental <= 0.0) {
            throw std::invalid_argument("--fundamental must be positive");
        }
        if (opt.harmonics < 1) {
            throw std::invalid_argument("--harmonics must be >= 1");
        }
        if (!ends_with(opt.in_path, ".wav") && opt.rate <= 0.0) {
            throw std::invalid_argument("raw input needs --rate");
        }
        const SignalBuffer buf = read_signal(opt.in_path, opt.rate);
        const std::size_t n = opt.fft_length == 0 ? buf.samples.size() : opt.fft_length;
        const Spectrum spec =
            analyze_spectrum(buf, n, opt.hann ? Window::Hann : Window::Rectangular);

        out << "harmonic,measured_magnitude,square_wave_magnitude,relative_error\n"
            << std::setprecision(12);
        for (int h = 1; h <= opt.harmonics; ++h) {
            const double measured = measure_harmonic(spec, opt.fundamental, h);
            const double ideal = h % 2 == 1 ? rect_fourier_coefficient(h) : 0.0;
            // For the even harmonics the last column is the absolute
            // residual; a relative error against zero has no meaning.
            const double error = ideal > 0.0 ? (measured - ideal) / ideal : measured;
            out << h << ',' << measured << ',' << ideal << ',' << error << '\n';
        }
        return kExitOk;
    });
}

}  // namespace pwmradio
