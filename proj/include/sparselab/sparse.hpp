#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sparselab/grid.hpp"
#include "sparselab/signal.hpp"

namespace sparselab {

// Sparsity fraction: every major set satisfies |E_Q| >= c |Q|.
inline constexpr double kSparsityFraction = 0.5;

struct SparseEntry {
    DyadicCube cube;
    std::vector<Interval> major_set;  // E_Q as disjoint ranges, increasing

    std::int64_t major_size() const;
};

struct SparseCollection {
    std::vector<SparseEntry> entries;
    double c0 = 0.0;  // stopping constant actually used by the builder (0 if hand-made)

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

struct SparseFormParams {
    double r = 1.0;
    double s = 1.0;
};

struct SparsityReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Checks E_Q inside Q, |E_Q| >= c|Q| and pairwise disjointness of the E_Q.
SparsityReport verify_sparsity(const SparseCollection& s, double c = kSparsityFraction);

// Lambda_{r,s}(f, g) = sum_Q <f>_{Q,r} <g>_{Q,s} |Q| (averages over 3Q).
// Throws std::invalid_argument if the collection fails verify_sparsity.
double sparse_form(const SparseCollection& s, const Signal& f, const Signal& g, SparseFormParams params);

// Stopping-time construction.  Starting from the smallest cube containing
// both supports, the stopping children of Q are the maximal proper subcubes
// Q' with <f>_{Q',r} > C0 <f>_{Q,r} or <g>_{Q',r} > C0 <g>_{Q,r}; E_Q is Q
// minus their union.  If some union exceeds |Q|/2 the whole construction is
// repeated with C0 doubled.  Zero f and g give the empty collection.
SparseCollection build_sparse_collection(const Signal& f, const Signal& g, double r, double c0 = 16.0);

using LinearOperator = std::function<Signal(const Signal&)>;

struct DominationResult {
    double pairing = 0.0;  // |<T f, g>|
    double form = 0.0;     // Lambda_{r,r}(f, g)
    double ratio = 0.0;
    double c0 = 0.0;
    std::size_t cubes = 0;
};

// |<T f, g>| / Lambda_{r,r}(f, g) with the constructed collection.
// Throws std::domain_error if the form vanishes while the pairing does not.
DominationResult domination_ratio(const LinearOperator& apply_t, const Signal& f, const Signal& g, double r,
                                  double c0 = 16.0);

}  // namespace sparselab
