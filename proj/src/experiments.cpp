#include "sparselab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sparselab/averages.hpp"
#include "sparselab/convolution.hpp"
#include "sparselab/fft.hpp"
#include "sparselab/random_singular.hpp"
#include "sparselab/sparse.hpp"

namespace sparselab {

namespace {

Interval random_block(rng::SplitMix64& gen, const Interval& window, std::int64_t min_len) {
    const std::int64_t n = window.size();
    if (n <= 0) throw std::invalid_argument("random_block_signal: empty window");
    min_len = std::clamp<std::int64_t>(min_len, 1, n);
    // Length and position are drawn as fractions, so one stream gives the
    // same relative geometry in windows of different sizes.
    const auto len = std::min(n, min_len + static_cast<std::int64_t>(gen.uniform() * static_cast<double>(n - min_len + 1)));
    const auto start = window.lo + std::min(n - len, static_cast<std::int64_t>(gen.uniform() * static_cast<double>(n - len + 1)));
    return {start, start + len};
}

}  // namespace

Signal random_block_signal(rng::SplitMix64& gen, const Interval& window, std::int64_t min_len) {
    const Interval block = random_block(gen, window, min_len);
    Signal f = Signal::zeros(window);
    for (std::int64_t x = block.lo; x < block.hi; ++x) f.at(x) = gen.sign();
    return f;
}

Signal constant_block_signal(rng::SplitMix64& gen, const Interval& window, std::int64_t min_len) {
    const Interval block = random_block(gen, window, min_len);
    Signal f = Signal::zeros(window);
    const double s = gen.sign();
    for (std::int64_t x = block.lo; x < block.hi; ++x) f.at(x) = s;
    return f;
}

Signal random_sign_signal(rng::SplitMix64& gen, const Interval& window) {
    Signal f = Signal::zeros(window);
    for (auto& v : f.values()) v = gen.sign();
    return f;
}

DominationSweep domination_sweep(SingularOperator op, double alpha, double r, std::int64_t n, int trials,
                                 std::uint64_t seed) {
    if (n < 8 || trials < 1) throw std::invalid_argument("domination_sweep: need n >= 8 and trials >= 1");
    DominationSweep out;
    out.op = op;
    out.alpha = alpha;
    out.r = r;
    out.n = n;
    const ConvolutionKernel kernel = op == SingularOperator::hilbert
                                         ? hilbert_kernel(n)
                                         : random_hilbert_kernel(RandomSet(alpha, seed, n));
    const SignalConvolver conv(kernel, static_cast<std::size_t>(n));
    const LinearOperator apply = [&conv](const Signal& f) { return conv.apply(f); };
    const Interval window{0, n};
    out.ratios.assign(static_cast<std::size_t>(trials), 0.0);
    std::vector<double> c0s(static_cast<std::size_t>(trials), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        rng::SplitMix64 gen(rng::combine(seed ^ 0xd0d0d0d0ULL, static_cast<std::uint64_t>(t)));
        Signal f;
        Signal g;
        switch (t % 3) {
            case 0:
                f = random_block_signal(gen, window, n / 8);
                g = random_block_signal(gen, window, n / 8);
                break;
            case 1:
                f = constant_block_signal(gen, window, n / 8);
                g = constant_block_signal(gen, window, n / 8);
                break;
            default: {
                // g = sign(T f) on a block: the pairing is as large as a
                // +-1 block allows.
                f = constant_block_signal(gen, window, n / 8);
                const Signal tf = apply(f);
                g = constant_block_signal(gen, window, n / 8);
                for (std::int64_t x = window.lo; x < window.hi; ++x) {
                    if (g(x) != 0.0) g.at(x) = tf(x) < 0.0 ? -1.0 : 1.0;
                }
                break;
            }
        }
        const DominationResult d = domination_ratio(apply, f, g, r);
        out.ratios[static_cast<std::size_t>(t)] = d.ratio;
        c0s[static_cast<std::size_t>(t)] = d.c0;
    }
    out.sup_ratio = *std::max_element(out.ratios.begin(), out.ratios.end());
    out.max_c0 = *std::max_element(c0s.begin(), c0s.end());
    return out;
}

namespace {

double weighted_norm(const Signal& f, double p, double a) {
    double s = 0.0;
    const Interval ext = f.extent();
    for (std::int64_t x = ext.lo; x < ext.hi; ++x) {
        const double v = f(x);
        if (v == 0.0) continue;
        s += std::pow(std::abs(v), p) * std::pow(1.0 + std::abs(static_cast<double>(x)), a);
    }
    return std::pow(s, 1.0 / p);
}

}  // namespace

WeightedNormSweep weighted_norm_sweep(double alpha, double p, double a, std::int64_t n, int trials,
                                      std::uint64_t seed) {
    if (n < 8 || trials < 1) throw std::invalid_argument("weighted_norm_sweep: need n >= 8 and trials >= 1");
    WeightedNormSweep out;
    out.alpha = alpha;
    out.p = p;
    out.a = a;
    out.n = n;
    const Interval window{-n, n};
    const SignalConvolver conv(random_hilbert_kernel(RandomSet(alpha, seed, n)),
                               static_cast<std::size_t>(window.size()));
    out.ratios.assign(static_cast<std::size_t>(trials), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        rng::SplitMix64 gen(rng::combine(seed ^ 0x77777777ULL, static_cast<std::uint64_t>(t)));
        const Signal f = (t % 2 == 0) ? random_block_signal(gen, window, 1) : random_sign_signal(gen, window);
        out.ratios[static_cast<std::size_t>(t)] = weighted_norm(conv.apply(f), p, a) / weighted_norm(f, p, a);
    }
    out.sup_ratio = *std::max_element(out.ratios.begin(), out.ratios.end());
    return out;
}

PowerIterationResult hilbert_section_norm(std::int64_t n, std::int64_t pad, double tol, int max_iter) {
    if (n < 1 || pad < 0) throw std::invalid_argument("hilbert_section_norm: need n >= 1, pad >= 0");
    const std::int64_t span = n + pad;
    std::vector<fft::cdouble> kernel(static_cast<std::size_t>(2 * span + 1));
    for (std::int64_t m = 1; m <= span; ++m) {
        kernel[static_cast<std::size_t>(span + m)] = 1.0 / static_cast<double>(m);
        kernel[static_cast<std::size_t>(span - m)] = -1.0 / static_cast<double>(m);
    }
    // H is antisymmetric, so its adjoint is convolution with the negated kernel.
    const fft::Convolver conv(kernel, static_cast<std::size_t>(n + 2 * pad));
    const auto out_len = static_cast<std::size_t>(n + 2 * pad);

    PowerIterationResult res;
    std::vector<fft::cdouble> v(static_cast<std::size_t>(n));
    rng::SplitMix64 gen(7);
    for (auto& z : v) z = gen.uniform() - 0.5;
    double prev = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        double nv = 0.0;
        for (const auto& z : v) nv += std::norm(z);
        nv = std::sqrt(nv);
        for (auto& z : v) z /= nv;
        // Output x in [-pad, n + pad) sits at full-convolution index x + span.
        const auto full = conv.apply(v);
        std::vector<fft::cdouble> w(full.begin() + (span - pad), full.begin() + (span - pad) + static_cast<std::ptrdiff_t>(out_len));
        double nw = 0.0;
        for (const auto& z : w) nw += std::norm(z);
        res.norm = std::sqrt(nw);
        res.iterations = it;
        if (it > 1 && std::abs(nw - prev) <= tol * nw) {
            res.converged = true;
            break;
        }
        prev = nw;
        // Input y in [0, n) from the output window: (H^* w)(y) = -(H w)(y);
        // w starts at x = -pad, so y sits at full index y + pad + span.
        const auto back = conv.apply(w);
        for (std::int64_t y = 0; y < n; ++y) v[static_cast<std::size_t>(y)] = -back[static_cast<std::size_t>(y + pad + span)];
    }
    return res;
}

}  // namespace sparselab
