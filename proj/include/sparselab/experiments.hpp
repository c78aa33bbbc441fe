#pragma once

// Monte Carlo drivers shared by the command line tool and the acceptance
// suite.  Every trial draws from its own counter-derived stream, so results
// do not depend on evaluation order.

#include <cstdint>
#include <vector>

#include "sparselab/rng.hpp"
#include "sparselab/signal.hpp"

namespace sparselab {

// +-1 values on a random subinterval of `window` of length at least
// min_len; zero elsewhere (extent is the window).
Signal random_block_signal(rng::SplitMix64& gen, const Interval& window, std::int64_t min_len);

// One random sign on a random subinterval of `window` of length at least
// min_len; zero elsewhere.
Signal constant_block_signal(rng::SplitMix64& gen, const Interval& window, std::int64_t min_len);

// Independent +-1 values on the whole window.
Signal random_sign_signal(rng::SplitMix64& gen, const Interval& window);

enum class SingularOperator { hilbert, random_hilbert };

struct DominationSweep {
    SingularOperator op = SingularOperator::hilbert;
    double alpha = 0.0;
    double r = 1.0;
    std::int64_t n = 0;
    std::vector<double> ratios;  // one per trial, trial order
    double sup_ratio = 0.0;
    double max_c0 = 0.0;
};

// |<T f, g>| / Lambda_r(f, g) for +-1 block signals on [0, n) with blocks
// of length >= n/8; T truncated at |k| <= n.  Trials cycle through three
// kinds: independent signs on both blocks, one sign per block, and f one
// sign per block with g = sign(T f) on its block.  The random set of
// H_alpha depends on the seed only, so the same realization is used for
// every n.
DominationSweep domination_sweep(SingularOperator op, double alpha, double r, std::int64_t n, int trials,
                                 std::uint64_t seed);

struct WeightedNormSweep {
    double alpha = 0.0;
    double p = 2.0;
    double a = 0.0;  // weight (1 + |x|)^a
    std::int64_t n = 0;
    std::vector<double> ratios;
    double sup_ratio = 0.0;
};

// ||H_alpha f||_{l^p(w)} / ||f||_{l^p(w)} for random f on [-n, n), kernel
// truncated at |k| <= n.  Trials alternate between block signals and
// signs on the whole window.
WeightedNormSweep weighted_norm_sweep(double alpha, double p, double a, std::int64_t n, int trials,
                                      std::uint64_t seed);

struct PowerIterationResult {
    double norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Norm of f -> (Hf) restricted to [-pad, n + pad), f supported on [0, n),
// by power iteration.  The kernel reaches every output point, so this is
// the exact operator of l^2([0, n)) into l^2 of the output window.
PowerIterationResult hilbert_section_norm(std::int64_t n, std::int64_t pad, double tol = 1e-9,
                                          int max_iter = 2000);

}  // namespace sparselab
