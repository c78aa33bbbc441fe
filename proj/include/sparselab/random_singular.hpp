#pragma once

// Random arithmetic sets, the random Hilbert transform and maximal function,
// the scale blocks T_k, and their l^2 operator norms.
//
// X_n (1 <= |n| <= n_max) is 1 exactly when
//     to_unit(combine(seed, zigzag(n))) < |n|^{-alpha},
// so each site has its own stream and X_{-n}, X_n are independent.

#include <cstdint>
#include <vector>

#include "sparselab/convolution.hpp"
#include "sparselab/mesh.hpp"
#include "sparselab/signal.hpp"

namespace sparselab {

class RandomSet {
public:
    // Requires 0 <= alpha < 1 and n_max >= 1.
    RandomSet(double alpha, std::uint64_t seed, std::int64_t n_max);

    // Explicit realization: `positive[i]` is X_{i+1}, `negative[i]` is X_{-(i+1)}.
    static RandomSet from_indicators(double alpha, std::vector<std::uint8_t> positive,
                                     std::vector<std::uint8_t> negative);

    // The counter-based draw for a single site.
    static bool draw(double alpha, std::uint64_t seed, std::int64_t n);

    double alpha() const { return alpha_; }
    std::uint64_t seed() const { return seed_; }
    std::int64_t n_max() const { return n_max_; }

    // X_n for 1 <= |n| <= n_max.
    bool x(std::int64_t n) const;
    // Y_n = X_n - |n|^{-alpha}.
    double y(std::int64_t n) const;

private:
    RandomSet() = default;

    double alpha_ = 0.0;
    std::uint64_t seed_ = 0;
    std::int64_t n_max_ = 0;
    std::vector<std::uint8_t> pos_;
    std::vector<std::uint8_t> neg_;
};

RandomSet sample_random_set(double alpha, std::uint64_t seed, std::int64_t n_max);

// Kernel of H truncated to 0 < |n| <= n_max: 1/n.
ConvolutionKernel hilbert_kernel(std::int64_t n_max);
// Kernel of H_alpha: X_n sgn(n) |n|^{alpha-1}.
ConvolutionKernel random_hilbert_kernel(const RandomSet& set);

// Hf(x) = sum_{0 < |n| <= n_max} f(x - n)/n on the full output extent.
Signal hilbert_transform(const Signal& f, std::int64_t n_max,
                         ConvolutionMethod method = ConvolutionMethod::automatic);
Signal random_hilbert(const Signal& f, const RandomSet& set,
                      ConvolutionMethod method = ConvolutionMethod::automatic);

// M_alpha f(x) = max over N with S_N >= 1 of |S_N^{-1} sum_{n=1}^N X_n f(x-n)|,
// N <= n_max, S_N = X_1 + ... + X_N.  Output extent is every x where some
// term can be nonzero.  Throws std::domain_error if X_1..X_{n_max} all vanish.
Signal random_maximal(const Signal& f, const RandomSet& set);

// T_k: coefficients c_n = Y_n sgn(n) |n|^{alpha-1} for 2^{k-1} <= |n| < 2^k,
// truncated at |n| <= n_max.
struct ScaleBlock {
    int k = 1;
    double alpha = 0.0;
    // positive[i] = c_{2^{k-1}+i}, negative[i] = c_{-(2^{k-1}+i)}.
    std::vector<double> positive;
    std::vector<double> negative;

    std::int64_t first() const { return std::int64_t{1} << (k - 1); }
    // Largest |n| carrying a coefficient.
    std::int64_t last() const { return first() + static_cast<std::int64_t>(positive.size()) - 1; }
    double coefficient(std::int64_t n) const;
    double max_abs() const;
    double abs_sum() const;
    ConvolutionKernel kernel() const;
};

ScaleBlock scale_block(const RandomSet& set, int k);
// Draws the block directly from (alpha, seed) with no truncation below 2^k.
ScaleBlock sample_scale_block(double alpha, std::uint64_t seed, int k);

Signal scale_block_apply(const Signal& f, const ScaleBlock& block,
                         ConvolutionMethod method = ConvolutionMethod::automatic);

// Z(j / M) = sum_n c_n e^{2 pi i n j / M}, j = 0..M-1, M = 2^{k+3}.
struct MultiplierProfile {
    int k = 1;
    std::vector<cdouble> values;

    std::size_t grid_size() const { return values.size(); }
};

MultiplierProfile multiplier_profile(const ScaleBlock& block);
// Same grid evaluated at M * refine points.
MultiplierProfile multiplier_profile(const ScaleBlock& block, std::size_t refine);

// max_j |Z(theta_j)| on the 2^{k+3} grid: the l^2 norm of T_k acting on
// sequences of period 2^{k+3} (the grid is the circulant spectrum).
double opnorm_multiplier(const ScaleBlock& block);

// Upper bound for sup_theta |Z(theta)| (the l^2(Z) norm) from the grid
// maximum: for a trigonometric polynomial of degree D sampled at M points,
//     sup |Z| <= max_j |Z(theta_j)| / sqrt(1 - 2 (pi D / M)^2).
double bernstein_factor(std::int64_t degree, std::size_t grid);
double certified_opnorm(const ScaleBlock& block);

// Seeds of the concentration experiment, one per (k, trial).
std::uint64_t trial_seed(std::uint64_t base_seed, int k, int trial);

struct ConcentrationRow {
    double alpha = 0.0;
    int k = 0;
    std::uint64_t seed = 0;
    double opnorm = 0.0;
    double bound = 0.0;  // C sqrt(k) 2^{-k(1-alpha)/2}
    bool exceed = false;
};

struct ConcentrationSummary {
    int k = 0;
    int trials = 0;
    int exceedances = 0;
    double median_ratio = 0.0;  // median of opnorm / (sqrt(k) 2^{-k(1-alpha)/2})
};

struct ConcentrationTable {
    std::vector<ConcentrationRow> rows;
    std::vector<ConcentrationSummary> summary;
    double trend_p_value = 1.0;  // Mann-Kendall on the medians
    long long trend_s = 0;
};

ConcentrationTable concentration_experiment(double alpha, int k_min, int k_max, int trials, double c,
                                            std::uint64_t base_seed);

// Both sides of the two single-interval estimates for T_k.
struct ScaleBilinearReport {
    int k = 0;
    double alpha = 0.0;
    double eps = 0.0;
    double lhs = 0.0;             // |<T_k f, g>|
    double opnorm = 0.0;          // realized norm (periodic grid maximum)
    double avg2 = 0.0;            // <f>_{I,2} <g>_{I,2} |I|
    double avg1 = 0.0;            // <f>_{I,1} <g>_{I,1} |I|
    double first_bound = 0.0;     // opnorm * avg2
    double scaled_bound = 0.0;    // 2^{-k(1-alpha)/2 + eps} * avg2
    double second_bound = 0.0;    // 2^{k alpha} * avg1
    double first_constant = 0.0;  // lhs / first_bound
    double scaled_constant = 0.0; // lhs / scaled_bound
    double second_constant = 0.0; // lhs / second_bound
};

// f, g supported in I with |I| = 2^k; averages over I.
ScaleBilinearReport scale_bilinear_bounds(const Signal& f, const Signal& g, const Interval& interval,
                                          const ScaleBlock& block, double eps = 0.0);

}  // namespace sparselab
