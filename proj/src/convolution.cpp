#include "sparselab/convolution.hpp"

#include <stdexcept>

#include "sparselab/fft.hpp"

namespace sparselab {

namespace {

Signal convolve_direct(const Signal& f, const ConvolutionKernel& k) {
    const std::size_t nf = f.size();
    const std::size_t nk = k.taps.size();
    std::vector<double> out(nf + nk - 1, 0.0);
    const auto fv = f.values();
    for (std::size_t j = 0; j < nf; ++j) {
        const double a = fv[j];
        if (a == 0.0) continue;
        double* o = out.data() + j;
        for (std::size_t i = 0; i < nk; ++i) o[i] += a * k.taps[i];
    }
    return Signal(f.offset() + k.lo, std::move(out));
}

std::vector<fft::cdouble> to_complex(std::span<const double> v) {
    return std::vector<fft::cdouble>(v.begin(), v.end());
}

}  // namespace

struct SignalConvolver::Impl {
    fft::Convolver conv;
};

SignalConvolver::SignalConvolver(const ConvolutionKernel& k, std::size_t max_input)
    : lo_(k.lo), impl_(std::make_unique<Impl>(Impl{fft::Convolver(to_complex(k.taps), max_input)})) {}

SignalConvolver::~SignalConvolver() = default;
SignalConvolver::SignalConvolver(SignalConvolver&&) noexcept = default;
SignalConvolver& SignalConvolver::operator=(SignalConvolver&&) noexcept = default;

Signal SignalConvolver::apply(const Signal& f) const {
    if (f.empty()) return Signal();
    const auto full = impl_->conv.apply(to_complex(f.values()));
    std::vector<double> out(full.size());
    for (std::size_t i = 0; i < full.size(); ++i) out[i] = full[i].real();
    return Signal(f.offset() + lo_, std::move(out));
}

Signal convolve(const Signal& f, const ConvolutionKernel& k, ConvolutionMethod method) {
    if (f.empty() || k.taps.empty()) return Signal();
    if (method == ConvolutionMethod::automatic) {
        const double work = static_cast<double>(f.size()) * static_cast<double>(k.taps.size());
        method = (work <= 262144.0 || f.size() <= 32 || k.taps.size() <= 32) ? ConvolutionMethod::direct
                                                                              : ConvolutionMethod::fft;
    }
    if (method == ConvolutionMethod::direct) return convolve_direct(f, k);
    return SignalConvolver(k, f.size()).apply(f);
}

}  // namespace sparselab
