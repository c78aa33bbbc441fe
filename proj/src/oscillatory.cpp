#include "sparselab/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "sparselab/fft.hpp"
#include "sparselab/rng.hpp"
#include "sparselab/stats.hpp"

namespace sparselab {

PolynomialPhase PolynomialPhase::monomial(int degree, double coeff) {
    if (degree < 2) throw std::invalid_argument("PolynomialPhase::monomial: degree must be >= 2");
    PolynomialPhase p;
    p.lambda.assign(static_cast<std::size_t>(degree) + 1, 0.0);
    p.lambda[static_cast<std::size_t>(degree)] = coeff;
    return p;
}

int PolynomialPhase::degree() const {
    for (std::size_t b = lambda.size(); b-- > 2;) {
        if (lambda[b] != 0.0) return static_cast<int>(b);
    }
    return 0;
}

double PolynomialPhase::norm() const {
    double s = 0.0;
    for (std::size_t b = 2; b < lambda.size(); ++b) s += std::abs(lambda[b]);
    return s;
}

double PolynomialPhase::operator()(double y) const {
    double v = 0.0;
    for (std::size_t b = lambda.size(); b-- > 2;) v = (v + lambda[b]) * y;
    return v * y;
}

double PolynomialPhase::derivative(double y) const {
    double v = 0.0;
    for (std::size_t b = lambda.size(); b-- > 2;) v = v * y + static_cast<double>(b) * lambda[b];
    return v * y;
}

double PolynomialPhase::slope_bound(double radius) const {
    double s = 0.0;
    for (std::size_t b = 2; b < lambda.size(); ++b) {
        s += static_cast<double>(b) * std::abs(lambda[b]) * std::pow(radius, static_cast<double>(b) - 1.0);
    }
    return s;
}

PolynomialPhase normalize_phase(std::span<const double> raw) {
    PolynomialPhase p;
    p.constant = raw.size() > 0 ? raw[0] : 0.0;
    const double lin = raw.size() > 1 ? raw[1] : 0.0;
    std::size_t top = 0;
    for (std::size_t b = 2; b < raw.size(); ++b) {
        if (raw[b] != 0.0) top = b;
    }
    if (top == 0) {
        p.linear = lin;
        p.pure_linear = true;
        return p;
    }
    auto excess = [&](double s) {
        double v = -1.0;
        for (std::size_t b = 2; b <= top; ++b) v += std::abs(raw[b]) * std::pow(s, static_cast<double>(b));
        return v;
    };
    double hi = 1.0;
    while (excess(hi) < 0.0) hi *= 2.0;
    double lo = hi / 2.0;
    while (excess(lo) > 0.0) lo /= 2.0;
    double s = lo;
    if (excess(lo) != 0.0) {
        std::uintmax_t iters = 200;
        const auto bracket = boost::math::tools::toms748_solve(
            excess, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
        s = 0.5 * (bracket.first + bracket.second);
    }
    p.dilation = s;
    p.linear = lin * s;
    p.lambda.assign(top + 1, 0.0);
    for (std::size_t b = 2; b <= top; ++b) p.lambda[b] = raw[b] * std::pow(s, static_cast<double>(b));
    return p;
}

namespace bump {

namespace {
double h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
}  // namespace

double transition(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = h(t);
    return a / (a + h(1.0 - t));
}

double plateau(double u) { return transition(2.0 - 2.0 * std::abs(u)); }

double annulus(double u) { return plateau(u) - plateau(2.0 * u); }

}  // namespace bump

double truncated_kernel(int j, double y, KernelProfile profile) {
    if (y == 0.0) return 0.0;
    const double v = bump::annulus(std::ldexp(y, 1 - j)) / y;
    return profile == KernelProfile::nonnegative ? std::abs(v) : v;
}

// FFT convolvers for the forward and adjoint lattice convolutions.
struct LocalizedPiece::Engine {
    fft::Convolver forward;
    fft::Convolver backward;
};

LocalizedPiece::~LocalizedPiece() = default;
LocalizedPiece::LocalizedPiece(LocalizedPiece&&) noexcept = default;
LocalizedPiece& LocalizedPiece::operator=(LocalizedPiece&&) noexcept = default;

double LocalizedPiece::max_step(const PolynomialPhase& phase, int k, double ppw) {
    const double inner = std::ldexp(1.0, k - 3);  // inner radius of supp phi_k
    double h = inner / ppw;
    const double omega = phase.slope_bound(std::ldexp(1.0, k - 1));
    if (omega > 0.0) h = std::min(h, 2.0 * std::numbers::pi / (ppw * omega));
    return h;
}

std::size_t LocalizedPiece::required_panels(const PolynomialPhase& phase, int k, double ppw) {
    const double third = std::ldexp(1.0, k + 2) / 3.0;
    auto n = static_cast<std::size_t>(std::ceil(third / max_step(phase, k, ppw) - 1e-9));
    if (n % 2 == 1) ++n;
    return std::max<std::size_t>(n, 2);
}

LocalizedPiece::LocalizedPiece(PolynomialPhase phase, int k, PieceOptions options)
    : phase_(std::move(phase)), k_(k), profile_(options.profile), origin_(options.origin) {
    if (k < 1 || k > 20) throw std::invalid_argument("LocalizedPiece: k must lie in 1..20");
    if (!(options.points_per_wavelength >= kMinPointsPerWavelength)) {
        throw std::invalid_argument("LocalizedPiece: mesh under-resolved, need at least " +
                                    std::to_string(required_panels(phase_, k, kMinPointsPerWavelength)) +
                                    " panels (16 points per wavelength)");
    }
    const std::size_t need = required_panels(phase_, k, kMinPointsPerWavelength);
    panels_ = options.panels == 0 ? required_panels(phase_, k, options.points_per_wavelength) : options.panels;
    if (panels_ % 2 == 1) throw std::invalid_argument("LocalizedPiece: panel count must be even");
    if (panels_ < need) {
        throw std::invalid_argument("LocalizedPiece: mesh under-resolved, need at least " + std::to_string(need) +
                                    " panels (16 points per wavelength), got " + std::to_string(panels_));
    }
    h_ = third() / static_cast<double>(panels_);
    reach_ = static_cast<std::int64_t>(std::floor(std::ldexp(1.0, k - 1) / h_)) + 1;
    lattice_.resize(static_cast<std::size_t>(2 * reach_ + 1));
    for (std::int64_t m = -reach_; m <= reach_; ++m) {
        lattice_[static_cast<std::size_t>(m + reach_)] = amplitude(static_cast<double>(m) * h_);
    }
    std::vector<cdouble> reversed(lattice_.size());
    for (std::size_t p = 0; p < lattice_.size(); ++p) reversed[p] = std::conj(lattice_[lattice_.size() - 1 - p]);
    engine_ = std::make_unique<Engine>(
        Engine{fft::Convolver(lattice_, panels_ + 1), fft::Convolver(reversed, 3 * panels_ + 1)});
}

double LocalizedPiece::side() const { return std::ldexp(1.0, k_ + 2); }
double LocalizedPiece::third() const { return side() / 3.0; }

MeshSignal LocalizedPiece::input_mesh() const {
    return {third_lo(), h_, std::vector<cdouble>(panels_ + 1)};
}

MeshSignal LocalizedPiece::output_mesh() const {
    return {cube_lo(), h_, std::vector<cdouble>(3 * panels_ + 1)};
}

MeshSignal LocalizedPiece::sample_input(const std::function<cdouble(double)>& f) const {
    MeshSignal m = input_mesh();
    for (std::size_t j = 0; j < m.size(); ++j) m.values[j] = f(m.x(j));
    return m;
}

cdouble LocalizedPiece::amplitude(double y) const {
    const double phi = truncated_kernel(k_, y, profile_);
    if (phi == 0.0) return {0.0, 0.0};
    return std::polar(phi, phase_(y));
}

namespace {

std::vector<double> quadrature_weights(std::size_t panels, double h, Quadrature q) {
    std::vector<double> w(panels + 1, h);
    if (q == Quadrature::simpson) {
        for (std::size_t j = 0; j <= panels; ++j) {
            w[j] = h / 3.0 * ((j == 0 || j == panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0));
        }
    }
    return w;
}

void check_mesh(const MeshSignal& m, const MeshSignal& expected, const char* what) {
    const double tol = 1e-9 * std::max(1.0, std::abs(expected.x0));
    if (m.size() != expected.size() || std::abs(m.x0 - expected.x0) > tol ||
        std::abs(m.h - expected.h) > 1e-12 * expected.h) {
        throw std::invalid_argument(std::string(what) + ": signal is not sampled on the piece's mesh");
    }
}

}  // namespace

MeshSignal LocalizedPiece::apply(const MeshSignal& f, Quadrature q) const {
    check_mesh(f, input_mesh(), "iq_apply");
    const auto w = quadrature_weights(panels_, h_, q);
    std::vector<cdouble> v(f.values);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= w[j];
    const auto c = engine_->forward.apply(v);
    MeshSignal out = output_mesh();
    const auto n3 = static_cast<std::int64_t>(panels_);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::int64_t idx = static_cast<std::int64_t>(i) - n3 + reach_;
        if (idx >= 0 && idx < static_cast<std::int64_t>(c.size())) out.values[i] = c[static_cast<std::size_t>(idx)];
    }
    return out;
}

MeshSignal LocalizedPiece::adjoint(const MeshSignal& g, Quadrature q) const {
    check_mesh(g, output_mesh(), "iq_adjoint");
    const auto w = quadrature_weights(panels_, h_, q);
    const auto d = engine_->backward.apply(g.values);
    MeshSignal out = input_mesh();
    const auto n3 = static_cast<std::int64_t>(panels_);
    for (std::size_t j = 0; j < out.size(); ++j) {
        const std::int64_t idx = static_cast<std::int64_t>(j) + n3 + reach_;
        if (idx < static_cast<std::int64_t>(d.size())) out.values[j] = w[j] * d[static_cast<std::size_t>(idx)];
    }
    return out;
}

MeshSignal iq_apply(const LocalizedPiece& piece, const MeshSignal& f, Quadrature q) { return piece.apply(f, q); }

MeshSignal iq_adjoint(const LocalizedPiece& piece, const MeshSignal& g, Quadrature q) {
    return piece.adjoint(g, q);
}

cdouble kq_kernel(const LocalizedPiece& piece, double x, double y) {
    const double lo = piece.third_lo();
    const double hi = lo + piece.third();
    const double slack = 1e-9 * piece.side();
    if (x < lo - slack || x > hi + slack || y < lo - slack || y > hi + slack) {
        throw std::invalid_argument("kq_kernel: arguments must lie in Q/3");
    }
    const double s = x - y;
    const double h = piece.step();
    cdouble sum{0.0, 0.0};
    const auto lat = piece.lattice();
    for (std::int64_t m = -piece.reach(); m <= piece.reach(); ++m) {
        const cdouble a = lat[static_cast<std::size_t>(m + piece.reach())];
        if (a == cdouble{}) continue;
        sum += std::conj(a) * piece.amplitude(static_cast<double>(m) * h + s);
    }
    return sum * h;
}

std::vector<cdouble> kq_profile(const LocalizedPiece& piece) {
    const auto lat = piece.lattice();
    const std::size_t n = fft::next_pow2(2 * lat.size());
    std::vector<cdouble> buf(n, cdouble{});
    std::copy(lat.begin(), lat.end(), buf.begin());
    fft::forward(buf);
    for (auto& z : buf) z = std::norm(z);
    fft::backward(buf);
    const auto n3 = static_cast<std::int64_t>(piece.panels());
    const auto span = static_cast<std::int64_t>(lat.size()) - 1;  // largest nonzero lag
    const double scale = piece.step() / static_cast<double>(n);
    std::vector<cdouble> out(static_cast<std::size_t>(2 * n3 + 1), cdouble{});
    for (std::int64_t m = -n3; m <= n3; ++m) {
        if (m > span || m < -span) continue;
        const std::size_t idx = m >= 0 ? static_cast<std::size_t>(m) : n - static_cast<std::size_t>(-m);
        out[static_cast<std::size_t>(m + n3)] = buf[idx] * scale;
    }
    return out;
}

BadSetReport badset_measure(const LocalizedPiece& piece, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("badset_measure: eps must be positive");
    BadSetReport rep;
    rep.eps = eps;
    const double q = piece.side();
    rep.threshold = std::pow(q, -1.0 - eps);
    const auto prof = kq_profile(piece);
    const auto n3 = static_cast<std::int64_t>(piece.panels());
    std::size_t count = 0;
    // |s| < |Q/3|: the endpoint lags +-panels are excluded.
    for (std::int64_t m = -n3 + 1; m <= n3 - 1; ++m) {
        if (std::abs(prof[static_cast<std::size_t>(m + n3)]) > rep.threshold) ++count;
    }
    rep.measure = static_cast<double>(count) * piece.step();
    rep.allowance = std::pow(q, 1.0 - eps);
    rep.ratio = rep.measure / rep.allowance;
    return rep;
}

namespace {

double l2(const std::vector<cdouble>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace

NormReport iq_l2_norm(const LocalizedPiece& piece, double tol, int max_iter) {
    NormReport rep;
    // Start from a windowed plane wave at the peak frequency of the symbol
    // (plus a little noise); the leading singular vectors of a truncated
    // convolution concentrate there, and the spectrum near the top is
    // clustered, so a random start converges slowly.
    const auto lat = piece.lattice();
    std::vector<cdouble> spectrum(fft::next_pow2(8 * lat.size()), cdouble{});
    std::copy(lat.begin(), lat.end(), spectrum.begin());
    fft::forward(spectrum);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < spectrum.size(); ++i) {
        if (std::norm(spectrum[i]) > std::norm(spectrum[peak])) peak = i;
    }
    // Bin i of the forward transform is frequency -2 pi i / (size h) in the
    // e^{+i xi u} convention of the convolution a * f.
    const double xi = 2.0 * std::numbers::pi * static_cast<double>(peak) /
                      (static_cast<double>(spectrum.size()) * piece.step());
    MeshSignal v = piece.input_mesh();
    rng::SplitMix64 gen(0x5eed);
    const double n3 = static_cast<double>(piece.panels());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double window = std::sin(std::numbers::pi * (static_cast<double>(j) + 0.5) / (n3 + 1.0));
        v.values[j] = std::polar(window, -xi * static_cast<double>(j) * piece.step()) +
                      cdouble{gen.uniform() - 0.5, gen.uniform() - 0.5} * 1e-3;
    }
    double nv = l2(v.values);
    double prev = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        for (auto& z : v.values) z /= nv;
        const MeshSignal bv = piece.apply(v, Quadrature::rectangle);
        const double rq = std::pow(l2(bv.values), 2);  // |Bv|^2 with |v| = 1
        rep.iterations = it;
        rep.norm = std::sqrt(rq);
        if (rq == 0.0) {
            rep.converged = true;
            return rep;
        }
        if (it > 1 && std::abs(rq - prev) <= tol * rq) {
            rep.converged = true;
            return rep;
        }
        prev = rq;
        v = piece.adjoint(bv, Quadrature::rectangle);
        nv = l2(v.values);
    }
    return rep;
}

RieszThorinReport riesz_thorin_bound(const LocalizedPiece& piece, double r, int trials, std::uint64_t seed,
                                     const NormReport* known_norm) {
    if (!(r > 1.0 && r <= 2.0)) throw std::invalid_argument("riesz_thorin_bound: need 1 < r <= 2");
    RieszThorinReport rep;
    rep.r = r;
    rep.theta = 2.0 * (r - 1.0) / r;
    for (const auto& a : piece.lattice()) rep.c_one = std::max(rep.c_one, std::abs(a));
    rep.c_two = known_norm ? known_norm->norm : iq_l2_norm(piece).norm;
    rep.bound = std::pow(rep.c_one, 1.0 - rep.theta) * std::pow(rep.c_two, rep.theta);
    rep.trials = trials;
    const double rp = r / (r - 1.0);
    const double h = piece.step();
    auto norm = [h](const std::vector<cdouble>& v, double p) {
        double s = 0.0;
        for (const auto& z : v) s += std::pow(std::abs(z), p);
        return std::pow(h * s, 1.0 / p);
    };
    rng::SplitMix64 gen(seed);
    for (int t = 0; t < trials; ++t) {
        MeshSignal f = piece.input_mesh();
        const std::size_t n = f.size();
        switch (t % 3) {
            case 0:  // independent complex samples
                for (auto& z : f.values) z = {gen.uniform() - 0.5, gen.uniform() - 0.5};
                break;
            case 1: {  // unimodular block on a random subinterval
                const std::size_t len = 1 + static_cast<std::size_t>(gen.uniform_int(0, static_cast<std::int64_t>(n)));
                const std::size_t start = static_cast<std::size_t>(gen.uniform_int(0, static_cast<std::int64_t>(n - len + 1)));
                const double ph = 2.0 * std::numbers::pi * gen.uniform();
                for (std::size_t j = start; j < start + len; ++j) f.values[j] = std::polar(1.0, ph);
                break;
            }
            default: {  // matched to the kernel at a random output point
                const double x0 = piece.cube_lo() + piece.side() * gen.uniform();
                for (std::size_t j = 0; j < n; ++j) f.values[j] = std::conj(piece.amplitude(x0 - f.x(j)));
                break;
            }
        }
        const double nf = norm(f.values, r);
        if (nf == 0.0) continue;
        const double out = norm(piece.apply(f, Quadrature::rectangle).values, rp);
        rep.measured = std::max(rep.measured, out / nf);
    }
    return rep;
}

SplitReport local_vs_global_split(const MeshSignal& f, const PolynomialPhase& phase) {
    SplitReport rep;
    const int d = std::max(phase.degree(), 2);
    rep.coefficient_bound = std::ldexp(1.0, d);
    const int samples = 200000;
    for (int i = 1; i <= samples; ++i) {
        const double y = 2.0 * static_cast<double>(i) / samples;
        for (double yy : {y, -y}) {
            const double num = std::abs(std::polar(1.0, phase(yy)) - cdouble{1.0, 0.0}) / y;
            double taylor = 0.0;
            for (std::size_t b = 2; b < phase.lambda.size(); ++b) {
                taylor += std::abs(phase.lambda[b]) * std::pow(y, static_cast<double>(b));
            }
            rep.numerical_sup = std::max(rep.numerical_sup, num);
            rep.analytic_sup = std::max(rep.analytic_sup, std::min(2.0, taylor) / y);
        }
    }
    if (f.size() == 0) return rep;
    const double h = f.h;
    const auto reach = static_cast<std::int64_t>(std::floor(2.0 / h + 1e-12));
    std::vector<cdouble> kern(static_cast<std::size_t>(2 * reach + 1), cdouble{});
    for (std::int64_t m = -reach; m <= reach; ++m) {
        if (m == 0) continue;
        const double y = static_cast<double>(m) * h;
        const cdouble v = (std::polar(1.0, phase(y)) - cdouble{1.0, 0.0}) / y;
        kern[static_cast<std::size_t>(m + reach)] = v;
        rep.lattice_sup = std::max(rep.lattice_sup, std::abs(v));
    }
    const auto df = fft::convolve(kern, f.values);
    std::vector<double> absf(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) absf[i] = std::abs(f.values[i]);
    std::vector<double> prefix(f.size() + 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) prefix[i + 1] = prefix[i] + absf[i];
    const auto n = static_cast<std::int64_t>(f.size());
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t a = std::max<std::int64_t>(0, i - reach);
        const std::int64_t b = std::min<std::int64_t>(n, i + reach + 1);
        const double mass = h * (prefix[static_cast<std::size_t>(b)] - prefix[static_cast<std::size_t>(a)]);
        if (mass <= 0.0) continue;
        const double v = h * std::abs(df[static_cast<std::size_t>(i + reach)]);
        rep.pointwise_ratio = std::max(rep.pointwise_ratio, v / mass);
    }
    return rep;
}

DecayReport oscillatory_decay(const PolynomialPhase& phase, int k_min, int k_max, PieceOptions options) {
    if (k_min < 1 || k_max < k_min) throw std::invalid_argument("oscillatory_decay: bad k range");
    DecayReport rep;
    std::vector<double> ks, logs;
    for (int k = k_min; k <= k_max; ++k) {
        PieceOptions opt = options;
        opt.panels = 0;
        const LocalizedPiece piece(phase, k, opt);
        const NormReport n = iq_l2_norm(piece);
        rep.rows.push_back({k, n.norm, n.iterations, n.converged});
        if (n.norm > 0.0) {
            ks.push_back(k);
            logs.push_back(std::log2(n.norm));
        }
    }
    if (ks.size() >= 2) {
        rep.slope = stats::least_squares(ks, logs).slope;
        rep.fitted_eta = -rep.slope;
    }
    return rep;
}

}  // namespace sparselab
