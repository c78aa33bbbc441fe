#include "sparselab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sparselab::stats {

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median: empty sample");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

double mean(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("mean: empty sample");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

MeanStderr mean_and_stderr(std::span<const double> v) {
    MeanStderr out;
    out.mean = mean(v);
    if (v.size() < 2) return out;
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    const double n = static_cast<double>(v.size());
    out.stderr_ = std::sqrt(ss / (n - 1.0) / n);
    return out;
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("least_squares: need two or more paired points");
    }
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("least_squares: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

TrendTest mann_kendall(std::span<const double> series) {
    TrendTest t;
    const std::size_t n = series.size();
    if (n < 3) return t;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = series[j] - series[i];
            t.s += (d > 0) - (d < 0);
        }
    }
    const double nn = static_cast<double>(n);
    const double var = nn * (nn - 1.0) * (2.0 * nn + 5.0) / 18.0;
    if (t.s > 0) t.z = (static_cast<double>(t.s) - 1.0) / std::sqrt(var);
    else if (t.s < 0) t.z = (static_cast<double>(t.s) + 1.0) / std::sqrt(var);
    t.p_value = std::erfc(std::abs(t.z) / std::sqrt(2.0));
    return t;
}

}  // namespace sparselab::stats
