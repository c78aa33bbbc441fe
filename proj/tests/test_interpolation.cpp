#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sparselab/interpolation.hpp"

using namespace sparselab;

TEST_CASE("critical index of the random Hilbert pair is 1 + alpha") {
    for (int i = 1; i <= 50; ++i) {
        const double alpha = i / 51.0;
        const auto pair = EndpointPair::random_hilbert(alpha);
        const auto c = critical_index(pair);
        CHECK(c.r0 == doctest::Approx(1.0 + alpha).epsilon(1e-14));
        CHECK(c.theta0 == doctest::Approx(2.0 * alpha / (1.0 + alpha)).epsilon(1e-14));
        // The gain vanishes at the critical index.
        CHECK(std::abs((1.0 - c.theta0) * pair.b - c.theta0 * pair.a) < 1e-14);
    }
}

TEST_CASE("critical index examples") {
    const auto third = critical_index(EndpointPair::random_hilbert(1.0 / 3.0));
    CHECK(third.theta0 == doctest::Approx(0.5));
    CHECK(third.r0 == doctest::Approx(4.0 / 3.0));
    const auto flat = critical_index({0.5, 0.0});
    CHECK(flat.theta0 == 0.0);
    CHECK(flat.r0 == 1.0);
    CHECK_THROWS_AS(critical_index({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("interpolation parameter") {
    CHECK(interpolation_theta(2.0) == doctest::Approx(1.0));
    CHECK(interpolation_theta(1.0) == doctest::Approx(0.0));
    for (double r = 1.05; r < 2.0; r += 0.05) {
        const double t = interpolation_theta(r);
        CHECK(1.0 / r == doctest::Approx((1.0 - t) + t / 2.0));
    }
}

TEST_CASE("gain exponent") {
    const auto pair = EndpointPair::random_hilbert(0.5);
    CHECK(gain_exponent(pair, 1.75) == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
    CHECK(gain_exponent(pair, 1.5) == doctest::Approx(0.0).epsilon(1e-14));
    double prev = -INFINITY;
    for (double r = 1.01; r < 2.0; r += 0.01) {
        const double e = gain_exponent(pair, r);
        CHECK(e > prev);
        prev = e;
    }
    CHECK_THROWS_AS(gain_exponent(pair, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gain_exponent(pair, 2.0), std::invalid_argument);
}

TEST_CASE("weighted exponents") {
    const auto two = weighted_exponents(2.0, 3.0);
    CHECK(two.sparse == doctest::Approx(1.0));
    CHECK_FALSE(two.has_composite);
    CHECK(two.sparse_bound == doctest::Approx(3.0));
    const auto three = weighted_exponents(3.0, 2.0);
    CHECK(three.sparse == doctest::Approx(1.0));
    CHECK(three.has_composite);
    CHECK(three.composite == doctest::Approx(4.0 / 3.0));
    CHECK(three.composite_bound == doctest::Approx(std::pow(2.0, 4.0 / 3.0)));
    const auto low = weighted_exponents(1.5, 2.0);
    CHECK(low.sparse == doctest::Approx(2.0));
    CHECK(low.sparse_bound == doctest::Approx(4.0));
    CHECK_THROWS_AS(weighted_exponents(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(weighted_exponents(2.0, 0.5), std::invalid_argument);
}

TEST_CASE("fitted gain bookkeeping") {
    const auto fit = fitted_block_gain(0.5, 1.75, 4, 8, 5, 11);
    CHECK(fit.rows.size() == 5);
    CHECK(fit.theta == doctest::Approx(interpolation_theta(1.75)));
    CHECK(fit.eta == doctest::Approx(1.0 / 7.0));
    CHECK(fit.relative_error == doctest::Approx(std::abs(fit.fitted - fit.eta) / fit.eta));
    for (const auto& row : fit.rows) {
        CHECK(row.c1 > 0.0);
        CHECK(row.c2 > 0.0);
        CHECK(row.log_constant ==
              doctest::Approx((1.0 - fit.theta) * std::log2(row.c1) + fit.theta * std::log2(row.c2)));
    }
    const auto again = fitted_block_gain(0.5, 1.75, 4, 8, 5, 11);
    CHECK(again.fitted == fit.fitted);
}
