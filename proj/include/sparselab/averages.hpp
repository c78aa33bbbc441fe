#pragma once

#include <vector>

#include "sparselab/grid.hpp"
#include "sparselab/signal.hpp"

namespace sparselab {

// <f>_{Q,r} = ( |3Q|^{-1} sum_{x in 3Q} |f(x)|^r )^{1/r}, counting measure,
// |3Q| = 3 * 2^level.  Throws std::invalid_argument when r < 1.
double local_average(const Signal& f, const DyadicCube& q, double r);

// r-average of |f| over a plain interval (no enlargement).
double interval_average(const Signal& f, const Interval& set, double r);

// sum_x f(x) g(x).
double bilinear_pairing(const Signal& f, const Signal& g);

// Prefix sums of |f|^r for O(1) interval means; used where many averages of
// the same signal are needed.
class PowerSums {
public:
    PowerSums(const Signal& f, double r);

    double r() const { return r_; }
    // sum of |f|^r over the interval.
    double sum(const Interval& set) const;
    // mean of |f|^r over the interval (the r-th power of the r-average).
    double mean_power(const Interval& set) const;
    double average(const Interval& set) const;

private:
    double r_;
    std::int64_t offset_;
    std::vector<long double> prefix_;
};

}  // namespace sparselab
