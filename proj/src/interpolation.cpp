#include "sparselab/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sparselab/random_singular.hpp"
#include "sparselab/stats.hpp"

namespace sparselab {

CriticalIndex critical_index(const EndpointPair& pair) {
    if (pair.a + pair.b == 0.0) throw std::invalid_argument("critical_index: a + b must be nonzero");
    CriticalIndex c;
    c.theta0 = pair.b / (pair.a + pair.b);
    c.r0 = 1.0 / ((1.0 - c.theta0) + c.theta0 / 2.0);
    return c;
}

double interpolation_theta(double r) { return 2.0 * (r - 1.0) / r; }

double gain_exponent(const EndpointPair& pair, double r) {
    if (!(r > 1.0 && r < 2.0)) throw std::invalid_argument("gain_exponent: need 1 < r < 2");
    const double theta = interpolation_theta(r);
    return theta * pair.a - (1.0 - theta) * pair.b;
}

WeightedExponents weighted_exponents(double p, double ap_char) {
    if (!(p > 1.0)) throw std::invalid_argument("weighted_exponents: need p > 1");
    if (!(ap_char >= 1.0)) throw std::invalid_argument("weighted_exponents: A_p characteristic is >= 1");
    WeightedExponents w;
    w.p = p;
    w.sparse = std::max(1.0, 1.0 / (p - 1.0));
    w.sparse_bound = std::pow(ap_char, w.sparse);
    if (p > 2.0) {
        w.has_composite = true;
        w.composite = 1.0 + 1.0 / p;
        w.composite_bound = std::pow(ap_char, w.composite);
    }
    return w;
}

FittedGain fitted_block_gain(double alpha, double r, int k_min, int k_max, int seeds, std::uint64_t base_seed) {
    if (seeds < 1 || k_max <= k_min) throw std::invalid_argument("fitted_block_gain: need seeds >= 1, k_max > k_min");
    FittedGain out;
    out.alpha = alpha;
    out.r = r;
    out.theta = interpolation_theta(r);
    out.eta = gain_exponent(EndpointPair::random_hilbert(alpha), r);
    std::vector<double> ks, ys;
    for (int k = k_min; k <= k_max; ++k) {
        std::vector<double> c1(static_cast<std::size_t>(seeds)), c2(static_cast<std::size_t>(seeds));
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < seeds; ++t) {
            const ScaleBlock b = sample_scale_block(alpha, trial_seed(base_seed, k, t), k);
            c1[static_cast<std::size_t>(t)] = std::ldexp(b.max_abs(), k);
            c2[static_cast<std::size_t>(t)] = opnorm_multiplier(b) / std::sqrt(static_cast<double>(k));
        }
        GainRow row;
        row.k = k;
        row.c1 = stats::median(c1);
        row.c2 = stats::median(c2);
        row.log_constant = (1.0 - out.theta) * std::log2(row.c1) + out.theta * std::log2(row.c2);
        out.rows.push_back(row);
        ks.push_back(k);
        ys.push_back(row.log_constant);
    }
    out.fitted = -stats::least_squares(ks, ys).slope;
    out.relative_error = std::abs(out.fitted - out.eta) / std::abs(out.eta);
    return out;
}

}  // namespace sparselab
