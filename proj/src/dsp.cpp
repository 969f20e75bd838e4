#include "pwmradio/dsp.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace pwmradio {

namespace {

double bessel_i0(double x) {
    // Power series; converges quickly for the beta range used here.
    double sum = 1.0;
    double term = 1.0;
    const double half = x / 2.0;
    for (int k = 1; k < 64; ++k) {
        term *= half / static_cast<double>(k);
        const double add = term * term;
        sum += add;
        if (add < sum * 1e-16) {
            break;
        }
    }
    return sum;
}

double sinc_pi(double x) {
    if (std::abs(x) < 1e-12) {
        return 1.0;
    }
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

}  // namespace

std::vector<double> design_lowpass(double sample_rate, double cutoff, double transition,
                                   double stopband_db) {
    if (sample_rate <= 0.0 || cutoff <= 0.0 || transition <= 0.0) {
        throw std::invalid_argument("filter design rates must be positive");
    }
    if (cutoff + transition / 2.0 >= sample_rate / 2.0) {
        throw std::invalid_argument("filter cutoff reaches the Nyquist rate");
    }

    const double a = stopband_db;
    double beta = 0.0;
    if (a > 50.0) {
        beta = 0.1102 * (a - 8.7);
    } else if (a >= 21.0) {
        beta = 0.5842 * std::pow(a - 21.0, 0.4) + 0.07886 * (a - 21.0);
    }
    const double delta_w = 2.0 * std::numbers::pi * transition / sample_rate;
    auto taps = static_cast<std::size_t>(std::ceil((a - 7.95) / (2.285 * delta_w))) + 1;
    if (taps % 2 == 0) {
        ++taps;  // symmetric type-I
    }
    if (taps < 3) {
        taps = 3;
    }

    const auto m = static_cast<double>(taps - 1) / 2.0;
    const double fc = 2.0 * cutoff / sample_rate;  // normalized to Nyquist=1
    const double denom = bessel_i0(beta);
    std::vector<double> h(taps);
    double sum = 0.0;
    for (std::size_t i = 0; i < taps; ++i) {
        const double t = static_cast<double>(i) - m;
        const double r = t / m;
        const double w = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / denom;
        h[i] = fc * sinc_pi(fc * t) * w;
        sum += h[i];
    }
    for (auto& v : h) {
        v /= sum;  // unity DC gain
    }
    return h;
}

template <typename T>
FirFilter<T>::FirFilter(std::vector<double> taps, std::size_t decim)
    : taps_(std::move(taps)), decim_(decim == 0 ? 1 : decim) {
    if (taps_.empty()) {
        throw std::invalid_argument("FIR needs at least one tap");
    }
    history_.assign(taps_.size() - 1, T{});
}

template <typename T>
void FirFilter<T>::process(const std::vector<T>& in, std::vector<T>& out) {
    const std::size_t hist = taps_.size() - 1;
    std::vector<T> work;
    work.reserve(hist + in.size());
    work.insert(work.end(), history_.begin(), history_.end());
    work.insert(work.end(), in.begin(), in.end());

    for (std::size_t i = 0; i < in.size(); ++i) {
        if (phase_ == 0) {
            T acc{};
            const std::size_t newest = i + hist;
            for (std::size_t t = 0; t < taps_.size(); ++t) {
                acc += work[newest - t] * taps_[t];
            }
            out.push_back(acc);
        }
        phase_ = (phase_ + 1) % decim_;
    }

    if (in.size() >= hist) {
        history_.assign(work.end() - static_cast<std::ptrdiff_t>(hist), work.end());
    } else {
        history_.erase(history_.begin(), history_.begin() + static_cast<std::ptrdiff_t>(in.size()));
        history_.insert(history_.end(), in.begin(), in.end());
    }
}

template class FirFilter<double>;
template class FirFilter<std::complex<double>>;

std::vector<double> resample_rational(const std::vector<double>& in, long in_rate,
                                      long out_rate) {
    if (in_rate <= 0 || out_rate <= 0) {
        throw std::invalid_argument("resample rates must be positive");
    }
    if (in_rate == out_rate || in.empty()) {
        return in;
    }
    const long g = std::gcd(in_rate, out_rate);
    const long up = out_rate / g;    // L
    const long down = in_rate / g;   // M

    const double virtual_rate = static_cast<double>(in_rate) * static_cast<double>(up);
    const double cutoff = 0.45 * static_cast<double>(std::min(in_rate, out_rate));
    std::vector<double> proto = design_lowpass(virtual_rate, cutoff, cutoff * 0.2, 60.0);
    // One branch per output phase, each normalized so DC passes exactly.
    const std::size_t per_branch = (proto.size() + static_cast<std::size_t>(up) - 1) /
                                   static_cast<std::size_t>(up);
    proto.resize(per_branch * static_cast<std::size_t>(up), 0.0);
    std::vector<std::vector<double>> branch(static_cast<std::size_t>(up));
    for (long p = 0; p < up; ++p) {
        auto& b = branch[static_cast<std::size_t>(p)];
        b.resize(per_branch);
        double sum = 0.0;
        for (std::size_t k = 0; k < per_branch; ++k) {
            b[k] = proto[static_cast<std::size_t>(p) + k * static_cast<std::size_t>(up)];
            sum += b[k];
        }
        if (sum != 0.0) {
            for (auto& v : b) {
                v /= sum;
            }
        }
    }

    const auto n_in = static_cast<long>(in.size());
    const long n_out = (n_in * up) / down;
    std::vector<double> out(static_cast<std::size_t>(n_out));
    auto sample_at = [&](long i) {
        // Edge replication keeps DC flat right up to the ends.
        if (i < 0) {
            return in.front();
        }
        if (i >= n_in) {
            return in.back();
        }
        return in[static_cast<std::size_t>(i)];
    };
    for (long j = 0; j < n_out; ++j) {
        const long v = j * down;
        const long anchor = v / up;
        const auto& b = branch[static_cast<std::size_t>(v % up)];
        double acc = 0.0;
        for (std::size_t k = 0; k < per_branch; ++k) {
            acc += b[k] * sample_at(anchor - static_cast<long>(k));
        }
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

double goertzel_amplitude(const std::vector<double>& samples, std::size_t start,
                          std::size_t len, double freq, double sample_rate) {
    if (start + len > samples.size() || len == 0) {
        throw std::invalid_argument("goertzel window out of range");
    }
    const double w = 2.0 * std::numbers::pi * freq / sample_rate;
    const double coeff = 2.0 * std::cos(w);
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double s = samples[start + i] + coeff * s1 - s2;
        s2 = s1;
        s1 = s;
    }
    const double power = s1 * s1 + s2 * s2 - coeff * s1 * s2;
    return 2.0 * std::sqrt(std::max(0.0, power)) / static_cast<double>(len);
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("correlation needs equal-length inputs");
    }
    const auto n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        dot += da * db;
        na += da * da;
        nb += db * db;
    }
    if (na <= 0.0 || nb <= 0.0) {
        return 0.0;
    }
    return dot / std::sqrt(na * nb);
}

}  // namespace pwmradio
