#include "sparselab/random_singular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sparselab/averages.hpp"
#include "sparselab/fft.hpp"
#include "sparselab/rng.hpp"
#include "sparselab/stats.hpp"

namespace sparselab {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
}

double site_power(double alpha, std::int64_t n) {
    return std::pow(static_cast<double>(n < 0 ? -n : n), -alpha);
}

// Coefficient of H_alpha - H at n for a given indicator value.
double block_coefficient(double alpha, std::int64_t n, bool x) {
    const double a = static_cast<double>(n < 0 ? -n : n);
    const double y = (x ? 1.0 : 0.0) - std::pow(a, -alpha);
    const double c = y * std::pow(a, alpha - 1.0);
    return n < 0 ? -c : c;
}

}  // namespace

bool RandomSet::draw(double alpha, std::uint64_t seed, std::int64_t n) {
    return rng::to_unit(rng::combine(seed, rng::zigzag(n))) < site_power(alpha, n);
}

RandomSet::RandomSet(double alpha, std::uint64_t seed, std::int64_t n_max)
    : alpha_(alpha), seed_(seed), n_max_(n_max) {
    check_alpha(alpha);
    if (n_max < 1) throw std::invalid_argument("RandomSet: n_max must be >= 1");
    pos_.resize(static_cast<std::size_t>(n_max));
    neg_.resize(static_cast<std::size_t>(n_max));
    for (std::int64_t n = 1; n <= n_max; ++n) {
        pos_[static_cast<std::size_t>(n - 1)] = draw(alpha, seed, n);
        neg_[static_cast<std::size_t>(n - 1)] = draw(alpha, seed, -n);
    }
}

RandomSet RandomSet::from_indicators(double alpha, std::vector<std::uint8_t> positive,
                                     std::vector<std::uint8_t> negative) {
    check_alpha(alpha);
    if (positive.empty() || positive.size() != negative.size()) {
        throw std::invalid_argument("RandomSet: indicator arrays must be nonempty and of equal length");
    }
    RandomSet s;
    s.alpha_ = alpha;
    s.n_max_ = static_cast<std::int64_t>(positive.size());
    s.pos_ = std::move(positive);
    s.neg_ = std::move(negative);
    return s;
}

bool RandomSet::x(std::int64_t n) const {
    if (n == 0 || n > n_max_ || n < -n_max_) throw std::out_of_range("RandomSet: site outside range");
    return n > 0 ? pos_[static_cast<std::size_t>(n - 1)] != 0 : neg_[static_cast<std::size_t>(-n - 1)] != 0;
}

double RandomSet::y(std::int64_t n) const { return (x(n) ? 1.0 : 0.0) - site_power(alpha_, n); }

RandomSet sample_random_set(double alpha, std::uint64_t seed, std::int64_t n_max) {
    return RandomSet(alpha, seed, n_max);
}

ConvolutionKernel hilbert_kernel(std::int64_t n_max) {
    if (n_max < 1) throw std::invalid_argument("hilbert_kernel: n_max must be >= 1");
    ConvolutionKernel k{-n_max, std::vector<double>(static_cast<std::size_t>(2 * n_max + 1), 0.0)};
    for (std::int64_t n = 1; n <= n_max; ++n) {
        k.taps[static_cast<std::size_t>(n_max + n)] = 1.0 / static_cast<double>(n);
        k.taps[static_cast<std::size_t>(n_max - n)] = -1.0 / static_cast<double>(n);
    }
    return k;
}

ConvolutionKernel random_hilbert_kernel(const RandomSet& set) {
    const std::int64_t m = set.n_max();
    ConvolutionKernel k{-m, std::vector<double>(static_cast<std::size_t>(2 * m + 1), 0.0)};
    for (std::int64_t n = 1; n <= m; ++n) {
        const double c = std::pow(static_cast<double>(n), set.alpha() - 1.0);
        if (set.x(n)) k.taps[static_cast<std::size_t>(m + n)] = c;
        if (set.x(-n)) k.taps[static_cast<std::size_t>(m - n)] = -c;
    }
    return k;
}

Signal hilbert_transform(const Signal& f, std::int64_t n_max, ConvolutionMethod method) {
    return convolve(f, hilbert_kernel(n_max), method);
}

Signal random_hilbert(const Signal& f, const RandomSet& set, ConvolutionMethod method) {
    return convolve(f, random_hilbert_kernel(set), method);
}

Signal random_maximal(const Signal& f, const RandomSet& set) {
    std::vector<std::int64_t> active;
    for (std::int64_t n = 1; n <= set.n_max(); ++n) {
        if (set.x(n)) active.push_back(n);
    }
    if (active.empty()) throw std::domain_error("random_maximal: no active sites, supremum over empty set");
    if (f.empty()) return Signal();
    const Interval ext = f.extent();
    const Interval out{ext.lo + 1, ext.hi + set.n_max()};
    std::vector<double> values(static_cast<std::size_t>(out.size()), 0.0);
    for (std::int64_t x = out.lo; x < out.hi; ++x) {
        double sum = 0.0;
        double best = 0.0;
        double count = 0.0;
        for (std::int64_t n : active) {
            sum += f(x - n);
            count += 1.0;
            best = std::max(best, std::abs(sum) / count);
        }
        values[static_cast<std::size_t>(x - out.lo)] = best;
    }
    return Signal(out.lo, std::move(values));
}

double ScaleBlock::coefficient(std::int64_t n) const {
    const std::int64_t a = n < 0 ? -n : n;
    if (a < first() || a > last()) return 0.0;
    const auto i = static_cast<std::size_t>(a - first());
    return n > 0 ? positive[i] : negative[i];
}

double ScaleBlock::max_abs() const {
    double m = 0.0;
    for (double c : positive) m = std::max(m, std::abs(c));
    for (double c : negative) m = std::max(m, std::abs(c));
    return m;
}

double ScaleBlock::abs_sum() const {
    double s = 0.0;
    for (double c : positive) s += std::abs(c);
    for (double c : negative) s += std::abs(c);
    return s;
}

ConvolutionKernel ScaleBlock::kernel() const {
    const std::int64_t m = last();
    ConvolutionKernel kern{-m, std::vector<double>(static_cast<std::size_t>(2 * m + 1), 0.0)};
    for (std::size_t i = 0; i < positive.size(); ++i) {
        const std::int64_t n = first() + static_cast<std::int64_t>(i);
        kern.taps[static_cast<std::size_t>(m + n)] = positive[i];
        kern.taps[static_cast<std::size_t>(m - n)] = negative[i];
    }
    return kern;
}

ScaleBlock scale_block(const RandomSet& set, int k) {
    if (k < 1 || k > 40) throw std::invalid_argument("scale_block: k must lie in 1..40");
    ScaleBlock b;
    b.k = k;
    b.alpha = set.alpha();
    const std::int64_t lo = b.first();
    const std::int64_t hi = std::min<std::int64_t>((std::int64_t{1} << k) - 1, set.n_max());
    if (hi < lo) throw std::invalid_argument("scale_block: block lies beyond the sampled range");
    for (std::int64_t n = lo; n <= hi; ++n) {
        b.positive.push_back(block_coefficient(set.alpha(), n, set.x(n)));
        b.negative.push_back(block_coefficient(set.alpha(), -n, set.x(-n)));
    }
    return b;
}

ScaleBlock sample_scale_block(double alpha, std::uint64_t seed, int k) {
    check_alpha(alpha);
    if (k < 1 || k > 40) throw std::invalid_argument("sample_scale_block: k must lie in 1..40");
    ScaleBlock b;
    b.k = k;
    b.alpha = alpha;
    const std::int64_t lo = b.first();
    const std::int64_t hi = (std::int64_t{1} << k) - 1;
    b.positive.reserve(static_cast<std::size_t>(hi - lo + 1));
    b.negative.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t n = lo; n <= hi; ++n) {
        b.positive.push_back(block_coefficient(alpha, n, RandomSet::draw(alpha, seed, n)));
        b.negative.push_back(block_coefficient(alpha, -n, RandomSet::draw(alpha, seed, -n)));
    }
    return b;
}

Signal scale_block_apply(const Signal& f, const ScaleBlock& block, ConvolutionMethod method) {
    return convolve(f, block.kernel(), method);
}

namespace {

// Coefficients wrapped onto Z/M: a[n mod M] += c_n.
template <typename T>
std::vector<T> wrapped(const ScaleBlock& block, std::size_t m) {
    std::vector<T> a(m, T{});
    const auto mm = static_cast<std::int64_t>(m);
    for (std::size_t i = 0; i < block.positive.size(); ++i) {
        const std::int64_t n = block.first() + static_cast<std::int64_t>(i);
        a[static_cast<std::size_t>(((n % mm) + mm) % mm)] += block.positive[i];
        a[static_cast<std::size_t>((((-n) % mm) + mm) % mm)] += block.negative[i];
    }
    return a;
}

std::size_t grid_size(int k) { return std::size_t{1} << (k + 3); }

}  // namespace

MultiplierProfile multiplier_profile(const ScaleBlock& block, std::size_t refine) {
    if (refine == 0) throw std::invalid_argument("multiplier_profile: refine must be >= 1");
    MultiplierProfile prof;
    prof.k = block.k;
    prof.values = wrapped<cdouble>(block, grid_size(block.k) * refine);
    fft::backward(prof.values);
    return prof;
}

MultiplierProfile multiplier_profile(const ScaleBlock& block) { return multiplier_profile(block, 1); }

double opnorm_multiplier(const ScaleBlock& block) {
    // For real coefficients |Z(theta)| = |Z(-theta)|, so half the spectrum
    // of a real transform suffices.
    const auto spectrum = fft::real_forward(wrapped<double>(block, grid_size(block.k)));
    double m = 0.0;
    for (const auto& z : spectrum) m = std::max(m, std::norm(z));
    return std::sqrt(m);
}

double bernstein_factor(std::int64_t degree, std::size_t grid) {
    const double t = std::numbers::pi * static_cast<double>(degree) / static_cast<double>(grid);
    const double d = 1.0 - 2.0 * t * t;
    if (!(d > 0.0)) throw std::invalid_argument("bernstein_factor: grid too coarse for the degree");
    return 1.0 / std::sqrt(d);
}

double certified_opnorm(const ScaleBlock& block) {
    return opnorm_multiplier(block) * bernstein_factor(block.last(), grid_size(block.k));
}

std::uint64_t trial_seed(std::uint64_t base_seed, int k, int trial) {
    const std::uint64_t key = (static_cast<std::uint64_t>(k) << 32) | static_cast<std::uint32_t>(trial);
    return rng::combine(base_seed, key);
}

ConcentrationTable concentration_experiment(double alpha, int k_min, int k_max, int trials, double c,
                                            std::uint64_t base_seed) {
    check_alpha(alpha);
    if (trials < 1) throw std::invalid_argument("concentration_experiment: trials must be >= 1");
    if (k_min < 1 || k_max < k_min || k_max > 26) {
        throw std::invalid_argument("concentration_experiment: need 1 <= k_min <= k_max <= 26");
    }
    ConcentrationTable table;
    std::vector<double> medians;
    for (int k = k_min; k <= k_max; ++k) {
        const double scale = std::sqrt(static_cast<double>(k)) * std::exp2(-k * (1.0 - alpha) / 2.0);
        std::vector<ConcentrationRow> rows(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < trials; ++t) {
            ConcentrationRow& row = rows[static_cast<std::size_t>(t)];
            row.alpha = alpha;
            row.k = k;
            row.seed = trial_seed(base_seed, k, t);
            row.opnorm = opnorm_multiplier(sample_scale_block(alpha, row.seed, k));
            row.bound = c * scale;
            row.exceed = row.opnorm > row.bound;
        }
        ConcentrationSummary s;
        s.k = k;
        s.trials = trials;
        std::vector<double> ratios;
        for (const auto& row : rows) {
            s.exceedances += row.exceed ? 1 : 0;
            ratios.push_back(row.opnorm / scale);
        }
        s.median_ratio = stats::median(ratios);
        medians.push_back(s.median_ratio);
        table.summary.push_back(s);
        table.rows.insert(table.rows.end(), rows.begin(), rows.end());
    }
    const auto trend = stats::mann_kendall(medians);
    table.trend_p_value = trend.p_value;
    table.trend_s = trend.s;
    return table;
}

ScaleBilinearReport scale_bilinear_bounds(const Signal& f, const Signal& g, const Interval& interval,
                                          const ScaleBlock& block, double eps) {
    const std::int64_t side = std::int64_t{1} << block.k;
    if (interval.size() != side) throw std::invalid_argument("scale_bilinear_bounds: need |I| = 2^k");
    for (const Signal* s : {&f, &g}) {
        if (const auto sup = s->support(); sup && !interval.contains(*sup)) {
            throw std::invalid_argument("scale_bilinear_bounds: signal not supported in I");
        }
    }
    ScaleBilinearReport rep;
    rep.k = block.k;
    rep.alpha = block.alpha;
    rep.eps = eps;
    const Signal fi = f.reframed(interval);
    const Signal gi = g.reframed(interval);
    rep.lhs = std::abs(bilinear_pairing(scale_block_apply(fi, block), gi));
    rep.opnorm = opnorm_multiplier(block);
    const double size = static_cast<double>(side);
    rep.avg2 = interval_average(fi, interval, 2.0) * interval_average(gi, interval, 2.0) * size;
    rep.avg1 = interval_average(fi, interval, 1.0) * interval_average(gi, interval, 1.0) * size;
    rep.first_bound = rep.opnorm * rep.avg2;
    rep.scaled_bound = std::exp2(-block.k * (1.0 - block.alpha) / 2.0 + eps) * rep.avg2;
    rep.second_bound = std::exp2(block.k * block.alpha) * rep.avg1;
    auto ratio = [&rep](double b) { return b > 0.0 ? rep.lhs / b : 0.0; };
    rep.first_constant = ratio(rep.first_bound);
    rep.scaled_constant = ratio(rep.scaled_bound);
    rep.second_constant = ratio(rep.second_bound);
    return rep;
}

}  // namespace sparselab
