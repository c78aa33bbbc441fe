#pragma once

#include <span>
#include <vector>

namespace sparselab::stats {

double median(std::vector<double> v);
double mean(std::span<const double> v);

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};
MeanStderr mean_and_stderr(std::span<const double> v);

// Ordinary least squares y = intercept + slope * x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit least_squares(std::span<const double> x, std::span<const double> y);

// Mann-Kendall trend test on a series in time order.  Two-sided p-value
// from the normal approximation with continuity correction (no tie
// adjustment of the variance).
struct TrendTest {
    long long s = 0;
    double z = 0.0;
    double p_value = 1.0;
};
TrendTest mann_kendall(std::span<const double> series);

}  // namespace sparselab::stats
