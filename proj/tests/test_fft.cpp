#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <numbers>

#include "sparselab/convolution.hpp"
#include "sparselab/fft.hpp"
#include "sparselab/rng.hpp"

using namespace sparselab;
using namespace sparselab::rng;
using fft::cdouble;

namespace {

std::vector<cdouble> naive_dft(const std::vector<cdouble>& x, int sign) {
    const std::size_t n = x.size();
    std::vector<cdouble> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cdouble s{};
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            s += x[j] * std::polar(1.0, ang);
        }
        out[k] = s;
    }
    return out;
}

std::vector<cdouble> random_complex(std::uint64_t seed, std::size_t n) {
    SplitMix64 gen(seed);
    std::vector<cdouble> v(n);
    for (auto& z : v) z = {2.0 * gen.uniform() - 1.0, 2.0 * gen.uniform() - 1.0};
    return v;
}

}  // namespace

TEST_CASE("forward and backward match a naive DFT") {
    for (std::size_t n : {1u, 2u, 3u, 8u, 12u, 31u, 64u}) {
        const auto x = random_complex(n, n);
        auto f = x;
        fft::forward(f);
        auto b = x;
        fft::backward(b);
        const auto fo = naive_dft(x, -1);
        const auto bo = naive_dft(x, +1);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(f[k] - fo[k]) < 1e-10);
            CHECK(std::abs(b[k] - bo[k]) < 1e-10);
        }
    }
}

TEST_CASE("real forward returns the first half of the complex transform") {
    SplitMix64 gen(4);
    for (std::size_t n : {1u, 5u, 16u, 100u}) {
        std::vector<double> x(n);
        for (auto& v : x) v = gen.uniform();
        const auto half = fft::real_forward(x);
        CHECK(half.size() == n / 2 + 1);
        const auto full = naive_dft(std::vector<cdouble>(x.begin(), x.end()), -1);
        for (std::size_t k = 0; k < half.size(); ++k) CHECK(std::abs(half[k] - full[k]) < 1e-10);
    }
}

TEST_CASE("complex convolver matches the direct sum") {
    const auto a = random_complex(1, 37);
    const auto b = random_complex(2, 100);
    const auto c = fft::convolve(a, b);
    REQUIRE(c.size() == 136);
    for (std::size_t q = 0; q < c.size(); ++q) {
        cdouble s{};
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (q >= j && q - j < a.size()) s += a[q - j] * b[j];
        }
        CHECK(std::abs(c[q] - s) < 1e-10);
    }
    const fft::Convolver conv(a, 10);
    CHECK_THROWS_AS(conv.apply(b), std::invalid_argument);
}

TEST_CASE("signal convolution: fft and direct agree") {
    SplitMix64 gen(8);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t nf = 1 + gen.uniform_int(0, 500);
        const std::size_t nk = 1 + gen.uniform_int(0, 300);
        std::vector<double> fv(nf), kv(nk);
        for (auto& v : fv) v = 2.0 * gen.uniform() - 1.0;
        for (auto& v : kv) v = 2.0 * gen.uniform() - 1.0;
        const Signal f(gen.uniform_int(-100, 100), fv);
        const ConvolutionKernel k{gen.uniform_int(-50, 50), kv};
        const Signal d = convolve(f, k, ConvolutionMethod::direct);
        const Signal e = convolve(f, k, ConvolutionMethod::fft);
        CHECK(d.extent() == e.extent());
        CHECK(d.extent() == Interval{f.offset() + k.lo, f.extent().hi + k.hi() - 1});
        for (std::int64_t x = d.extent().lo; x < d.extent().hi; ++x) CHECK(std::abs(d(x) - e(x)) < 1e-10);
    }
}

TEST_CASE("convolution with a shifted delta translates") {
    const Signal f(3, {1.0, -2.0, 5.0});
    const ConvolutionKernel k{4, {1.0}};
    const Signal g = convolve(f, k);
    CHECK(g(7) == 1.0);
    CHECK(g(9) == 5.0);
}
