#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pwmradio {

// Kaiser-windowed sinc low-pass prototype, unity DC gain, odd length.
// cutoff is the -6 dB edge; transition is the passband-to-stopband width;
// stopband_db sets the attenuation (and the ripple) target.
std::vector<double> design_lowpass(double sample_rate, double cutoff, double transition,
                                   double stopband_db);

// FIR filter with carried history so a stream can be processed in chunks.
// An optional decimation factor makes it a polyphase-style decimator: only
// every `decim`-th output is computed.
template <typename T>
class FirFilter {
public:
    FirFilter() = default;
    FirFilter(std::vector<double> taps, std::size_t decim = 1);

    // Consumes `in`, appends produced samples to `out`.
    void process(const std::vector<T>& in, std::vector<T>& out);

    // Center-tap group delay in input samples.
    double delay() const { return (static_cast<double>(taps_.size()) - 1.0) / 2.0; }

private:
    std::vector<double> taps_;
    std::vector<T> history_;   // last taps_.size()-1 inputs
    std::size_t decim_ = 1;
    std::size_t phase_ = 0;    // input samples consumed modulo decim_
};

extern template class FirFilter<double>;
extern template class FirFilter<std::complex<double>>;

// Rational-ratio polyphase resampler: out_rate/in_rate reduced by gcd, one
// windowed-sinc branch per output phase, each branch normalized to unity DC
// gain. Equal rates return the input unchanged.
std::vector<double> resample_rational(const std::vector<double>& in, long in_rate,
                                      long out_rate);

// Tone amplitude via the Goertzel recurrence over samples [start, start+len),
// normalized so a unit sine at `freq` reads 1.0.
double goertzel_amplitude(const std::vector<double>& samples, std::size_t start,
                          std::size_t len, double freq, double sample_rate);

// Pearson correlation of equal-length vectors, 0.0 when either is constant.
double correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace pwmradio
