#pragma once

// Muckenhoupt and reverse Holder characteristics over finite families of
// shifted dyadic cubes.  Cube averages here are taken over Q itself (not
// the enlargement 3Q used by local_average).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sparselab/grid.hpp"
#include "sparselab/signal.hpp"

namespace sparselab {

// Strictly positive, finite function on a window.
class Weight {
public:
    Weight(const GridWindow& window, std::vector<double> values);

    static Weight constant(const GridWindow& window, double value = 1.0);

    const GridWindow& window() const { return window_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    // w(x); x must lie in the window.
    double operator()(std::int64_t x) const;

    // Pointwise power w^e.
    Weight pow(double e) const;

    // w(I) = sum over I of w; I must lie in the window.
    double mass(const Interval& set) const;

private:
    GridWindow window_;
    std::vector<double> values_;
};

// w(x) = (1 + |x|)^a on the window.
Weight power_weight(double a, const GridWindow& window);

// sigma = w^{1 - p'}.
Weight dual_weight(const Weight& w, double p);

double conjugate_exponent(double p);

struct CharacteristicReport {
    std::string characteristic;  // "A_p" or "RH_r"
    double p = 0.0;              // exponent of A_p (0 for RH)
    double r = 0.0;              // exponent of RH_r (0 for A_p)
    DyadicCube argmax;
    double value = 1.0;
};

// [w]_{A_p} = sup_Q (w(Q)/|Q|) (w^{1/(1-p)}(Q)/|Q|)^{p-1}.
CharacteristicReport ap_characteristic(const Weight& w, double p, std::span<const DyadicCube> family);

// [w]_{RH_r} = sup_Q <w>_{Q,r} / <w>_{Q,1}.
CharacteristicReport rh_characteristic(const Weight& w, double r, std::span<const DyadicCube> family);

// The cube family used by default: all cubes of the three grids inside
// the weight's window.
std::vector<DyadicCube> default_family(const Weight& w);

struct WeightReport {
    CharacteristicReport ap;
    CharacteristicReport rh;
};
WeightReport weight_report(const Weight& w, double p, double r, std::span<const DyadicCube> family);

// Largest r in {1 + 2^-j : j = 0..max_j} with [w]_{RH_r} <= bound, if any.
std::optional<double> rh_exponent_scan(const Weight& w, std::span<const DyadicCube> family,
                                       double bound = 4.0, int max_j = 20);

// Characteristics of the two hypotheses
//     w^{1+alpha} in A_{(1+alpha)(p-1)+1},   w in A_{1 + 1/((1+alpha)(p'-1))}
// and of the consequence  w in A_p,  w in RH_r,  sigma in RH_r.
struct WWReport {
    double alpha = 0.0;
    double p = 0.0;
    double r = 0.0;
    double threshold = 10.0;
    CharacteristicReport lifted_ap;  // [w^{1+alpha}]_{A_{(1+alpha)(p-1)+1}}
    CharacteristicReport low_ap;     // [w]_{A_{1+1/((1+alpha)(p'-1))}}
    CharacteristicReport ap;         // [w]_{A_p}
    CharacteristicReport rh_w;       // [w]_{RH_r}
    CharacteristicReport rh_sigma;   // [sigma]_{RH_r}
    bool hypotheses_hold = false;    // both hypothesis characteristics <= threshold
    bool consequences_hold = false;  // the three consequence characteristics <= threshold
};

// Requires 0 < alpha < 1, 1 + alpha < p < (1 + alpha)/alpha, r > 1 + alpha.
WWReport check_ww_conditions(const Weight& w, double p, double alpha, double r,
                             std::span<const DyadicCube> family, double threshold = 10.0);

// (sum_x |f(x)|^p w(x))^{1/p}; f must be supported in the window.
double weighted_lp_norm(const Signal& f, const Weight& w, double p);

// Single-scale estimate at level k on grid 1:
//     lhs = sum_{|Q| = 2^k} <f>_{Q,r} <g>_{Q,r} |Q|      (averages over 3Q)
//     rhs = [w]_{A_p}^{1/p} [w]_{RH_r} [sigma]_{RH_r} ||f||_{L^p(w)} ||g||_{L^{p'}(sigma)}
// Also reported: the same sum with averages over Q itself, and the right
// side with ||g||_{L^{p'}(w)} in place of ||g||_{L^{p'}(sigma)}.
struct ScaleBoundReport {
    int k = 0;
    double p = 0.0;
    double r = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double lhs_cube = 0.0;
    double ratio_cube = 0.0;
    double rhs_literal = 0.0;
    double ratio_literal = 0.0;
};

// Characteristics are computed once per (w, p, r, family) and reused for
// every trial.
class ScaleBoundContext {
public:
    // Requires 1 < r < 2 and r <= p <= r'.
    ScaleBoundContext(Weight w, double p, double r, std::span<const DyadicCube> family);

    const Weight& weight() const { return w_; }
    const Weight& dual() const { return sigma_; }
    double ap() const { return ap_; }
    double rh_w() const { return rh_w_; }
    double rh_sigma() const { return rh_sigma_; }
    double constant() const;

    ScaleBoundReport evaluate(const Signal& f, const Signal& g, int k) const;

private:
    Weight w_;
    Weight sigma_;
    double p_;
    double r_;
    double ap_;
    double rh_w_;
    double rh_sigma_;
};

ScaleBoundReport single_scale_sparse_bound(const Signal& f, const Signal& g, const Weight& w,
                                           double p, double r, int k);

}  // namespace sparselab
