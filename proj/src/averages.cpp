#include "sparselab/averages.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparselab {

namespace {

void check_exponent(double r) {
    if (!(r >= 1.0) || !std::isfinite(r)) {
        throw std::invalid_argument("average: exponent r must be finite and >= 1");
    }
}

double power_abs(double v, double r) {
    const double a = std::abs(v);
    if (r == 1.0) return a;
    if (r == 2.0) return a * a;
    return std::pow(a, r);
}

double root(double mean, double r) {
    if (r == 1.0) return mean;
    if (r == 2.0) return std::sqrt(mean);
    return std::pow(mean, 1.0 / r);
}

}  // namespace

double interval_average(const Signal& f, const Interval& set, double r) {
    check_exponent(r);
    if (set.empty()) throw std::invalid_argument("interval_average: empty interval");
    const Interval common = set.intersect(f.extent());
    double s = 0.0;
    for (std::int64_t x = common.lo; x < common.hi; ++x) s += power_abs(f(x), r);
    return root(s / static_cast<double>(set.size()), r);
}

double local_average(const Signal& f, const DyadicCube& q, double r) {
    return interval_average(f, q.triple(), r);
}

double bilinear_pairing(const Signal& f, const Signal& g) {
    const Interval common = f.extent().intersect(g.extent());
    double s = 0.0;
    for (std::int64_t x = common.lo; x < common.hi; ++x) s += f(x) * g(x);
    return s;
}

PowerSums::PowerSums(const Signal& f, double r) : r_(r), offset_(f.offset()) {
    check_exponent(r);
    prefix_.resize(f.size() + 1);
    prefix_[0] = 0.0L;
    const auto v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        prefix_[i + 1] = prefix_[i] + static_cast<long double>(power_abs(v[i], r));
    }
}

double PowerSums::sum(const Interval& set) const {
    const auto n = static_cast<std::int64_t>(prefix_.size()) - 1;
    const std::int64_t a = std::clamp<std::int64_t>(set.lo - offset_, 0, n);
    const std::int64_t b = std::clamp<std::int64_t>(set.hi - offset_, 0, n);
    if (b <= a) return 0.0;
    const long double s = prefix_[static_cast<std::size_t>(b)] - prefix_[static_cast<std::size_t>(a)];
    return s > 0.0L ? static_cast<double>(s) : 0.0;
}

double PowerSums::mean_power(const Interval& set) const {
    if (set.empty()) throw std::invalid_argument("PowerSums: empty interval");
    return sum(set) / static_cast<double>(set.size());
}

double PowerSums::average(const Interval& set) const { return root(mean_power(set), r_); }

}  // namespace sparselab
