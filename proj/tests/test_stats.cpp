#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <vector>

#include "sparselab/stats.hpp"

using namespace sparselab;

TEST_CASE("median and mean") {
    CHECK(stats::median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(stats::median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(stats::mean(v) == 2.5);
    const auto ms = stats::mean_and_stderr(v);
    // sample sd = sqrt(5/3), stderr = sd / 2
    CHECK(ms.stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
}

TEST_CASE("least squares recovers an exact line") {
    const std::vector<double> x{0.0, 1.0, 2.0, 5.0};
    std::vector<double> y;
    for (double t : x) y.push_back(3.0 - 0.5 * t);
    const auto fit = stats::least_squares(x, y);
    CHECK(fit.slope == doctest::Approx(-0.5));
    CHECK(fit.intercept == doctest::Approx(3.0));
}

TEST_CASE("least squares against a closed-form fit") {
    const std::vector<double> x{1.0, 2.0, 3.0};
    const std::vector<double> y{1.0, 2.0, 4.0};
    // Sxy = 3, Sxx = 2
    const auto fit = stats::least_squares(x, y);
    CHECK(fit.slope == doctest::Approx(1.5));
    CHECK(fit.intercept == doctest::Approx(7.0 / 3.0 - 3.0));
}

TEST_CASE("Mann-Kendall on a strictly increasing series of five") {
    const std::vector<double> s{1.0, 2.0, 3.0, 4.0, 5.0};
    const auto t = stats::mann_kendall(s);
    CHECK(t.s == 10);
    // var = 5*4*15/18 = 50/3, z = (10 - 1)/sqrt(50/3)
    const double z = 9.0 / std::sqrt(50.0 / 3.0);
    CHECK(t.z == doctest::Approx(z));
    CHECK(t.p_value == doctest::Approx(std::erfc(z / std::sqrt(2.0))));
    CHECK(t.p_value == doctest::Approx(0.0275).epsilon(0.01));
}

TEST_CASE("Mann-Kendall is antisymmetric and flat for constants") {
    const std::vector<double> up{1.0, 3.0, 2.0, 5.0, 4.0, 6.0};
    std::vector<double> down(up.rbegin(), up.rend());
    const auto a = stats::mann_kendall(up);
    const auto b = stats::mann_kendall(down);
    CHECK(a.s == -b.s);
    CHECK(a.p_value == doctest::Approx(b.p_value));
    const std::vector<double> flat(6, 1.0);
    CHECK(stats::mann_kendall(flat).s == 0);
    CHECK(stats::mann_kendall(flat).p_value == doctest::Approx(1.0));
}
