#include "sparselab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparselab {

Signal::Signal(std::int64_t offset, std::vector<double> values)
    : offset_(offset), values_(std::move(values)) {}

Signal Signal::zeros(const Interval& extent) {
    return Signal(extent.lo, std::vector<double>(static_cast<std::size_t>(extent.size()), 0.0));
}

Signal Signal::delta(std::int64_t x, double value) { return Signal(x, {value}); }

Signal Signal::indicator(const Interval& set, double value) {
    return Signal(set.lo, std::vector<double>(static_cast<std::size_t>(set.size()), value));
}

double& Signal::at(std::int64_t x) {
    if (!extent().contains(x)) {
        throw std::out_of_range("Signal::at: index outside stored extent");
    }
    return values_[static_cast<std::size_t>(x - offset_)];
}

std::optional<Interval> Signal::support() const {
    const auto nz = [](double v) { return v != 0.0; };
    const auto first = std::find_if(values_.begin(), values_.end(), nz);
    if (first == values_.end()) return std::nullopt;
    const auto last = std::find_if(values_.rbegin(), values_.rend(), nz);
    const std::int64_t lo = offset_ + (first - values_.begin());
    const std::int64_t hi = offset_ + static_cast<std::int64_t>(values_.size()) - (last - values_.rbegin());
    return Interval{lo, hi};
}

double Signal::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double Signal::lp_norm(double p) const {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) return max_abs();
    double s = 0.0;
    for (double v : values_) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

Signal Signal::reframed(const Interval& extent) const {
    Signal out = zeros(extent);
    const Interval common = extent.intersect(this->extent());
    for (std::int64_t x = common.lo; x < common.hi; ++x) {
        out.values_[static_cast<std::size_t>(x - extent.lo)] = (*this)(x);
    }
    return out;
}

Signal& Signal::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

Signal operator+(const Signal& a, const Signal& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    Signal out = a.reframed(a.extent().hull(b.extent()));
    for (std::int64_t x = b.extent().lo; x < b.extent().hi; ++x) out.at(x) += b(x);
    return out;
}

Signal operator-(const Signal& a, const Signal& b) { return a + (-1.0) * b; }

Signal operator*(double a, const Signal& f) {
    Signal out = f;
    out *= a;
    return out;
}

}  // namespace sparselab
