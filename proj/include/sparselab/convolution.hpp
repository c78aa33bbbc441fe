#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sparselab/signal.hpp"

namespace sparselab {

// Convolution kernel k(n) on [lo, lo + taps.size()).
struct ConvolutionKernel {
    std::int64_t lo = 0;
    std::vector<double> taps;

    std::int64_t hi() const { return lo + static_cast<std::int64_t>(taps.size()); }
    double operator()(std::int64_t n) const {
        const std::int64_t i = n - lo;
        return (i >= 0 && i < static_cast<std::int64_t>(taps.size())) ? taps[static_cast<std::size_t>(i)] : 0.0;
    }
};

enum class ConvolutionMethod { automatic, direct, fft };

// (k * f)(x) = sum_n k(n) f(x - n), on the full extent
// [f.offset + k.lo, f.offset + f.size + k.hi - 1).
Signal convolve(const Signal& f, const ConvolutionKernel& k,
                ConvolutionMethod method = ConvolutionMethod::automatic);

// Reusable FFT convolution for many inputs of bounded length.
class SignalConvolver {
public:
    SignalConvolver(const ConvolutionKernel& k, std::size_t max_input);
    ~SignalConvolver();
    SignalConvolver(SignalConvolver&&) noexcept;
    SignalConvolver& operator=(SignalConvolver&&) noexcept;

    Signal apply(const Signal& f) const;

private:
    struct Impl;
    std::int64_t lo_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace sparselab
