#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sparselab/grid.hpp"

namespace sparselab {

// Finitely supported real function on Z, stored as a dense array on
// [offset, offset + size).  Values outside the stored extent are zero.
class Signal {
public:
    Signal() = default;
    Signal(std::int64_t offset, std::vector<double> values);

    static Signal zeros(const Interval& extent);
    static Signal delta(std::int64_t x, double value = 1.0);
    static Signal indicator(const Interval& set, double value = 1.0);

    std::int64_t offset() const { return offset_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    Interval extent() const {
        return {offset_, offset_ + static_cast<std::int64_t>(values_.size())};
    }

    // f(x); zero outside the stored extent.
    double operator()(std::int64_t x) const {
        const std::int64_t i = x - offset_;
        return (i >= 0 && i < static_cast<std::int64_t>(values_.size()))
                   ? values_[static_cast<std::size_t>(i)]
                   : 0.0;
    }
    // Mutable access; x must lie in the extent.
    double& at(std::int64_t x);

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    // Smallest interval holding every nonzero value, if any.
    std::optional<Interval> support() const;

    double max_abs() const;
    double lp_norm(double p) const;

    // Copy with extent replaced by `extent` (values outside are dropped,
    // new positions are zero).
    Signal reframed(const Interval& extent) const;

    Signal& operator*=(double a);
    friend Signal operator+(const Signal& a, const Signal& b);
    friend Signal operator-(const Signal& a, const Signal& b);
    friend Signal operator*(double a, const Signal& f);

private:
    std::int64_t offset_ = 0;
    std::vector<double> values_;
};

}  // namespace sparselab
