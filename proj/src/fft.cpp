#include "sparselab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace sparselab::fft {

namespace {

constexpr int kRealForward = 0;

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        fftw_plan plan = nullptr;
        if (sign == kRealForward) {
            auto* in = fftw_alloc_real(n);
            auto* out = fftw_alloc_complex(n / 2 + 1);
            if (in == nullptr || out == nullptr) throw std::bad_alloc();
            plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE | FFTW_UNALIGNED);
            fftw_free(in);
            fftw_free(out);
        } else {
            auto* scratch = fftw_alloc_complex(n);
            if (scratch == nullptr) throw std::bad_alloc();
            plan = fftw_plan_dft_1d(static_cast<int>(n), scratch, scratch, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
            fftw_free(scratch);
        }
        if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plans() {
    static PlanCache cache;
    return cache;
}

void run(std::span<cdouble> data, int sign) {
    if (data.size() <= 1) return;
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans().get(data.size(), sign), p, p);
}

}  // namespace

void forward(std::span<cdouble> data) { run(data, FFTW_FORWARD); }

std::vector<cdouble> real_forward(std::span<const double> data) {
    const std::size_t n = data.size();
    if (n == 0) return {};
    std::vector<double> in(data.begin(), data.end());
    std::vector<cdouble> out(n / 2 + 1);
    fftw_execute_dft_r2c(plans().get(n, kRealForward), in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}
void backward(std::span<cdouble> data) { run(data, FFTW_BACKWARD); }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

Convolver::Convolver(std::span<const cdouble> kernel, std::size_t max_input)
    : kernel_size_(kernel.size()), max_input_(max_input) {
    if (kernel.empty() || max_input == 0) {
        throw std::invalid_argument("Convolver: empty kernel or input");
    }
    n_ = next_pow2(kernel_size_ + max_input_ - 1);
    spectrum_.assign(n_, cdouble{});
    std::copy(kernel.begin(), kernel.end(), spectrum_.begin());
    forward(spectrum_);
}

std::vector<cdouble> Convolver::apply(std::span<const cdouble> input) const {
    if (input.empty()) return {};
    if (input.size() > max_input_) throw std::invalid_argument("Convolver: input too long");
    std::vector<cdouble> buf(n_, cdouble{});
    std::copy(input.begin(), input.end(), buf.begin());
    forward(buf);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) buf[i] *= spectrum_[i] * scale;
    backward(buf);
    buf.resize(input.size() + kernel_size_ - 1);
    return buf;
}

std::vector<cdouble> convolve(std::span<const cdouble> a, std::span<const cdouble> b) {
    if (a.empty() || b.empty()) return {};
    return Convolver(a, b.size()).apply(b);
}

}  // namespace sparselab::fft
