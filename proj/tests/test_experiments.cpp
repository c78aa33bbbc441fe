#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <numbers>

#include "sparselab/experiments.hpp"

using namespace sparselab;

TEST_CASE("random block signals") {
    rng::SplitMix64 gen(1);
    const Interval window{0, 256};
    for (int t = 0; t < 200; ++t) {
        const Signal f = random_block_signal(gen, window, 32);
        CHECK(f.extent() == window);
        for (double v : f.values()) CHECK((v == 0.0 || std::abs(v) == 1.0));
        REQUIRE(f.support().has_value());
        std::int64_t nonzero = 0;
        for (double v : f.values()) nonzero += v != 0.0 ? 1 : 0;
        CHECK(nonzero == f.support()->size());
        CHECK(nonzero >= 32);
    }
    const Signal s = random_sign_signal(gen, window);
    for (double v : s.values()) CHECK(std::abs(v) == 1.0);
}

TEST_CASE("domination sweep is reproducible and records every trial") {
    const auto a = domination_sweep(SingularOperator::random_hilbert, 0.3, 1.5, 256, 6, 9);
    const auto b = domination_sweep(SingularOperator::random_hilbert, 0.3, 1.5, 256, 6, 9);
    REQUIRE(a.ratios.size() == 6);
    CHECK(a.ratios == b.ratios);
    double sup = 0.0;
    for (double r : a.ratios) {
        CHECK(std::isfinite(r));
        sup = std::max(sup, r);
    }
    CHECK(a.sup_ratio == sup);
    CHECK(a.max_c0 >= 16.0);
    const auto h = domination_sweep(SingularOperator::hilbert, 0.0, 1.5, 256, 4, 9);
    CHECK(h.sup_ratio > 0.0);
}

TEST_CASE("weighted norm sweep: flat weight, full set") {
    // alpha = 0 keeps every site, so H_alpha is the truncated Hilbert
    // transform; its multiplier is bounded by 2 Si(pi) < 3.71.
    const auto s = weighted_norm_sweep(0.0, 2.0, 0.0, 256, 8, 3);
    CHECK(s.ratios.size() == 8);
    CHECK(s.sup_ratio <= 3.71);
    CHECK(s.sup_ratio > 0.5);
}

TEST_CASE("Hilbert section norm approaches pi from below") {
    const auto small = hilbert_section_norm(256, 1024);
    CHECK(small.converged);
    CHECK(small.norm < std::numbers::pi);
    CHECK(small.norm > 3.0);
    const auto big = hilbert_section_norm(1024, 4096);
    CHECK(big.norm >= small.norm * (1.0 - 1e-9));
}
