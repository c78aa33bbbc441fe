#pragma once

// Exponent calculus for interpolating between an l^2-type bound decaying
// like 2^{-ak} and an l^1-type bound growing like 2^{bk}.

#include <cstdint>
#include <vector>

namespace sparselab {

struct EndpointPair {
    double a = 0.0;  // gain of the l^2 endpoint
    double b = 0.0;  // growth of the l^1 endpoint

    // The pair of the scale blocks of H_alpha: a = (1 - alpha)/2, b = alpha.
    static EndpointPair random_hilbert(double alpha) { return {(1.0 - alpha) / 2.0, alpha}; }
};

struct CriticalIndex {
    double theta0 = 0.0;
    double r0 = 1.0;
};

// (1 - theta0) b = theta0 a and 1/r0 = (1 - theta0) + theta0/2.
CriticalIndex critical_index(const EndpointPair& pair);

// theta with 1/r = (1 - theta) + theta/2.
double interpolation_theta(double r);

// eta(r) = theta a - (1 - theta) b, for 1 < r < 2.
double gain_exponent(const EndpointPair& pair, double r);

struct WeightedExponents {
    double p = 2.0;
    double sparse = 1.0;        // max{1, 1/(p-1)}
    double composite = 0.0;     // 1 + 1/p, for p > 2
    bool has_composite = false;
    double sparse_bound = 1.0;     // ap^sparse
    double composite_bound = 0.0;  // ap^composite when defined
};
WeightedExponents weighted_exponents(double p, double ap_char);

// Empirical counterpart of gain_exponent for the scale blocks T_k: with
//     C1(k) = 2^k max_n |c_n|      (the l^1 endpoint, normalized)
//     C2(k) = ||T_k|| / sqrt(k)    (the l^2 endpoint with the sqrt(k) loss removed)
// taken as medians over seeds, the interpolated constant
// C1^{1-theta} C2^theta decays like 2^{-eta k}.  The fit is the
// least-squares slope of its log2 against k.
struct GainRow {
    int k = 0;
    double c1 = 0.0;
    double c2 = 0.0;
    double log_constant = 0.0;  // (1 - theta) log2 C1 + theta log2 C2
};
struct FittedGain {
    double alpha = 0.0;
    double r = 0.0;
    double theta = 0.0;
    double eta = 0.0;      // gain_exponent of the random-Hilbert pair
    double fitted = 0.0;   // -slope
    double relative_error = 0.0;
    std::vector<GainRow> rows;
};
FittedGain fitted_block_gain(double alpha, double r, int k_min, int k_max, int seeds, std::uint64_t base_seed);

}  // namespace sparselab
