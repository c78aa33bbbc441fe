#include "sparselab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sparselab/averages.hpp"

namespace sparselab {

namespace {

// Prefix sums of w^e, indexed from the window's left end.
class PowerPrefix {
public:
    PowerPrefix(const Weight& w, double e) : lo_(w.window().lo) {
        const auto v = w.values();
        prefix_.resize(v.size() + 1, 0.0L);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double x = (e == 1.0) ? v[i] : std::pow(v[i], e);
            prefix_[i + 1] = prefix_[i] + static_cast<long double>(x);
        }
    }

    double mean(const Interval& set) const {
        const auto a = static_cast<std::size_t>(set.lo - lo_);
        const auto b = static_cast<std::size_t>(set.hi - lo_);
        return static_cast<double>((prefix_[b] - prefix_[a]) / static_cast<long double>(set.size()));
    }

private:
    std::int64_t lo_;
    std::vector<long double> prefix_;
};

void check_family(const Weight& w, std::span<const DyadicCube> family) {
    if (family.empty()) throw std::invalid_argument("characteristic: empty cube family");
    for (const auto& q : family) {
        if (!w.window().contains(q.points())) {
            throw std::invalid_argument("characteristic: cube " + q.to_string() + " leaves the window");
        }
    }
}

}  // namespace

Weight::Weight(const GridWindow& window, std::vector<double> values)
    : window_(window), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(window_.size())) {
        throw std::invalid_argument("Weight: value count does not match window");
    }
    for (double v : values_) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("Weight: values must be positive and finite");
        }
    }
}

Weight Weight::constant(const GridWindow& window, double value) {
    return Weight(window, std::vector<double>(static_cast<std::size_t>(window.size()), value));
}

double Weight::operator()(std::int64_t x) const {
    if (!window_.contains(x)) throw std::out_of_range("Weight: point outside window");
    return values_[static_cast<std::size_t>(x - window_.lo)];
}

Weight Weight::pow(double e) const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(values_[i], e);
    return Weight(window_, std::move(v));
}

double Weight::mass(const Interval& set) const {
    if (!window_.contains(set)) throw std::invalid_argument("Weight::mass: interval leaves window");
    double s = 0.0;
    for (std::int64_t x = set.lo; x < set.hi; ++x) s += values_[static_cast<std::size_t>(x - window_.lo)];
    return s;
}

Weight power_weight(double a, const GridWindow& window) {
    std::vector<double> v(static_cast<std::size_t>(window.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = static_cast<double>(window.lo + static_cast<std::int64_t>(i));
        v[i] = std::pow(1.0 + std::abs(x), a);
    }
    return Weight(window, std::move(v));
}

double conjugate_exponent(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("conjugate_exponent: p must exceed 1");
    return p / (p - 1.0);
}

Weight dual_weight(const Weight& w, double p) { return w.pow(1.0 - conjugate_exponent(p)); }

CharacteristicReport ap_characteristic(const Weight& w, double p, std::span<const DyadicCube> family) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("ap_characteristic: p must exceed 1");
    check_family(w, family);
    const PowerPrefix direct(w, 1.0);
    const PowerPrefix dual(w, 1.0 / (1.0 - p));
    CharacteristicReport out{"A_p", p, 0.0, family.front(), 0.0};
    for (const auto& q : family) {
        const Interval pts = q.points();
        const double v = direct.mean(pts) * std::pow(dual.mean(pts), p - 1.0);
        if (v > out.value) {
            out.value = v;
            out.argmax = q;
        }
    }
    return out;
}

CharacteristicReport rh_characteristic(const Weight& w, double r, std::span<const DyadicCube> family) {
    if (!(r > 1.0) || !std::isfinite(r)) throw std::invalid_argument("rh_characteristic: r must exceed 1");
    check_family(w, family);
    const PowerPrefix direct(w, 1.0);
    const PowerPrefix power(w, r);
    CharacteristicReport out{"RH_r", 0.0, r, family.front(), 0.0};
    for (const auto& q : family) {
        const Interval pts = q.points();
        const double v = std::pow(power.mean(pts), 1.0 / r) / direct.mean(pts);
        if (v > out.value) {
            out.value = v;
            out.argmax = q;
        }
    }
    return out;
}

std::vector<DyadicCube> default_family(const Weight& w) { return cube_family(w.window()); }

WeightReport weight_report(const Weight& w, double p, double r, std::span<const DyadicCube> family) {
    return {ap_characteristic(w, p, family), rh_characteristic(w, r, family)};
}

std::optional<double> rh_exponent_scan(const Weight& w, std::span<const DyadicCube> family, double bound,
                                       int max_j) {
    for (int j = 0; j <= max_j; ++j) {
        const double r = 1.0 + std::ldexp(1.0, -j);
        if (rh_characteristic(w, r, family).value <= bound) return r;
    }
    return std::nullopt;
}

WWReport check_ww_conditions(const Weight& w, double p, double alpha, double r,
                             std::span<const DyadicCube> family, double threshold) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("check_ww_conditions: need 0 < alpha < 1");
    if (!(p > 1.0 + alpha && p < (1.0 + alpha) / alpha)) {
        throw std::invalid_argument("check_ww_conditions: need 1 + alpha < p < (1 + alpha)/alpha");
    }
    if (!(r > 1.0 + alpha)) throw std::invalid_argument("check_ww_conditions: need r > 1 + alpha");
    const double pp = conjugate_exponent(p);
    WWReport out;
    out.alpha = alpha;
    out.p = p;
    out.r = r;
    out.threshold = threshold;
    out.lifted_ap = ap_characteristic(w.pow(1.0 + alpha), (1.0 + alpha) * (p - 1.0) + 1.0, family);
    out.low_ap = ap_characteristic(w, 1.0 + 1.0 / ((1.0 + alpha) * (pp - 1.0)), family);
    out.ap = ap_characteristic(w, p, family);
    out.rh_w = rh_characteristic(w, r, family);
    out.rh_sigma = rh_characteristic(dual_weight(w, p), r, family);
    out.hypotheses_hold = out.lifted_ap.value <= threshold && out.low_ap.value <= threshold;
    out.consequences_hold =
        out.ap.value <= threshold && out.rh_w.value <= threshold && out.rh_sigma.value <= threshold;
    return out;
}

double weighted_lp_norm(const Signal& f, const Weight& w, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("weighted_lp_norm: p must be >= 1");
    double s = 0.0;
    const Interval ext = f.extent();
    for (std::int64_t x = ext.lo; x < ext.hi; ++x) {
        const double v = f(x);
        if (v == 0.0) continue;
        s += std::pow(std::abs(v), p) * w(x);
    }
    return std::pow(s, 1.0 / p);
}

ScaleBoundContext::ScaleBoundContext(Weight w, double p, double r, std::span<const DyadicCube> family)
    : w_(std::move(w)), sigma_(dual_weight(w_, p)), p_(p), r_(r) {
    if (!(r > 1.0 && r < 2.0)) throw std::invalid_argument("single_scale_sparse_bound: need 1 < r < 2");
    if (!(p >= r && p <= conjugate_exponent(r))) {
        throw std::invalid_argument("single_scale_sparse_bound: need r <= p <= r'");
    }
    ap_ = ap_characteristic(w_, p, family).value;
    rh_w_ = rh_characteristic(w_, r, family).value;
    rh_sigma_ = rh_characteristic(sigma_, r, family).value;
}

double ScaleBoundContext::constant() const { return std::pow(ap_, 1.0 / p_) * rh_w_ * rh_sigma_; }

ScaleBoundReport ScaleBoundContext::evaluate(const Signal& f, const Signal& g, int k) const {
    ScaleBoundReport out;
    out.k = k;
    out.p = p_;
    out.r = r_;
    const auto sf = f.support();
    const auto sg = g.support();
    const double pp = conjugate_exponent(p_);
    if (sf && sg) {
        const PowerSums pf(f, r_);
        const PowerSums pg(g, r_);
        const std::int64_t side = std::int64_t{1} << k;
        const Interval reach{std::max(sf->lo, sg->lo) - 2 * side, std::min(sf->hi, sg->hi) + 2 * side};
        if (!reach.empty()) {
            for (const auto& q : shifted_grid_cubes(1, k, reach)) {
                const Interval t = q.triple();
                const Interval c = q.points();
                out.lhs += pf.average(t) * pg.average(t) * static_cast<double>(side);
                out.lhs_cube += pf.average(c) * pg.average(c) * static_cast<double>(side);
            }
        }
    }
    const double nf = weighted_lp_norm(f, w_, p_);
    out.rhs = constant() * nf * weighted_lp_norm(g, sigma_, pp);
    out.rhs_literal = constant() * nf * weighted_lp_norm(g, w_, pp);
    out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
    out.ratio_cube = out.rhs > 0.0 ? out.lhs_cube / out.rhs : 0.0;
    out.ratio_literal = out.rhs_literal > 0.0 ? out.lhs / out.rhs_literal : 0.0;
    return out;
}

ScaleBoundReport single_scale_sparse_bound(const Signal& f, const Signal& g, const Weight& w, double p,
                                           double r, int k) {
    const auto family = default_family(w);
    return ScaleBoundContext(w, p, r, family).evaluate(f, g, k);
}

}  // namespace sparselab
