#pragma once

// One-dimensional localized pieces of the polynomial-phase operators
//
//     I_Q f(x) = int e(P(y)) phi_k(y) (1_{Q/3} f)(x - y) dy,   lQ = 2^{k+2},
//
// discretized on a uniform mesh fine enough to resolve the phase.
//
// The truncated kernels are phi_j(y) = psi(2^{1-j} y) / y with
//     h(t)   = exp(-1/t) for t > 0, 0 otherwise
//     S(t)   = h(t) / (h(t) + h(1 - t))
//     beta(u) = S(2 - 2|u|)            (1 on |u| <= 1/2, 0 on |u| >= 1)
//     psi(u)  = beta(u) - beta(2u)     (supported in 1/4 <= |u| <= 1)
// so phi_j lives on 2^{j-3} <= |y| <= 2^{j-1} and sum_{j>=1} phi_j(y) = 1/y
// for |y| >= 1/2.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "sparselab/mesh.hpp"

namespace sparselab {

// P(y) = sum_{beta >= 2} lambda_beta y^beta.  The constant and linear parts
// of a raw polynomial are kept aside: the constant is a unimodular factor
// and the linear part a modulation of f.
struct PolynomialPhase {
    std::vector<double> lambda;  // lambda[beta]; entries 0 and 1 are zero
    double constant = 0.0;
    double linear = 0.0;    // linear coefficient in the dilated variable
    double dilation = 1.0;  // s with P(y) = raw(s y) - constant - linear y
    bool pure_linear = false;

    static PolynomialPhase zero() { return {}; }
    // lambda_beta = coeff for the single degree, no normalization.
    static PolynomialPhase monomial(int degree, double coeff = 1.0);

    int degree() const;
    double norm() const;  // sum |lambda_beta|
    double operator()(double y) const;
    double derivative(double y) const;
    // sum beta |lambda_beta| R^{beta-1}: bound for |P'| on [-R, R].
    double slope_bound(double radius) const;
};

// Dilates y -> s y so that sum_{beta>=2} |lambda_beta| = 1; raw[beta] is
// the coefficient of y^beta.  A purely linear (or constant) polynomial is
// returned with pure_linear set and no higher terms.
PolynomialPhase normalize_phase(std::span<const double> raw);

namespace bump {
double transition(double t);  // S(t)
double plateau(double u);     // beta(u)
double annulus(double u);     // psi(u)
}  // namespace bump

enum class KernelProfile { signed_kernel, nonnegative };

// phi_j(y), or |phi_j(y)| for the nonnegative profile.
double truncated_kernel(int j, double y, KernelProfile profile = KernelProfile::signed_kernel);

enum class Quadrature { simpson, rectangle };

struct PieceOptions {
    double points_per_wavelength = 16.0;
    double origin = 0.0;  // left end of Q
    KernelProfile profile = KernelProfile::signed_kernel;
    std::size_t panels = 0;  // panels across Q/3; 0 selects the minimum admissible even count
};

class LocalizedPiece {
public:
    static constexpr double kMinPointsPerWavelength = 16.0;

    // Throws std::invalid_argument if the mesh does not resolve the phase
    // (fewer than 16 points per wavelength), with the required panel count
    // in the message.
    LocalizedPiece(PolynomialPhase phase, int k, PieceOptions options = {});
    ~LocalizedPiece();
    LocalizedPiece(LocalizedPiece&&) noexcept;
    LocalizedPiece& operator=(LocalizedPiece&&) noexcept;

    // Largest admissible step and smallest admissible even panel count.
    static double max_step(const PolynomialPhase& phase, int k, double points_per_wavelength);
    static std::size_t required_panels(const PolynomialPhase& phase, int k, double points_per_wavelength);

    const PolynomialPhase& phase() const { return phase_; }
    int k() const { return k_; }
    KernelProfile profile() const { return profile_; }
    double side() const;          // lQ = |Q| = 2^{k+2}
    double third() const;         // |Q/3|
    double step() const { return h_; }
    std::size_t panels() const { return panels_; }
    double cube_lo() const { return origin_; }
    double third_lo() const { return origin_ + third(); }

    // Input nodes u_j = third_lo + j h (j = 0..panels) and output nodes
    // x_i = cube_lo + i h (i = 0..3 panels), zero valued.
    MeshSignal input_mesh() const;
    MeshSignal output_mesh() const;
    MeshSignal sample_input(const std::function<cdouble(double)>& f) const;

    // e(P(y)) phi_k(y).
    cdouble amplitude(double y) const;
    // amplitude(m h) for m = -reach..reach.
    std::span<const cdouble> lattice() const { return lattice_; }
    std::int64_t reach() const { return reach_; }

    MeshSignal apply(const MeshSignal& f, Quadrature q) const;
    MeshSignal adjoint(const MeshSignal& g, Quadrature q) const;

private:
    struct Engine;

    PolynomialPhase phase_;
    int k_;
    KernelProfile profile_;
    double origin_;
    std::size_t panels_;
    double h_;
    std::int64_t reach_;
    std::vector<cdouble> lattice_;
    std::unique_ptr<Engine> engine_;
};

// Composite quadrature of I_Q f on the output nodes; f sampled on the
// input nodes.  Output vanishes outside Q by construction.
MeshSignal iq_apply(const LocalizedPiece& piece, const MeshSignal& f, Quadrature q = Quadrature::simpson);

// Adjoint of the discretized operator with respect to the h-weighted inner
// products on input and output nodes.
MeshSignal iq_adjoint(const LocalizedPiece& piece, const MeshSignal& g, Quadrature q = Quadrature::rectangle);

// K_Q(x, y) = int conj(a(z - x)) a(z - y) dz, a = e(P) phi_k, the kernel of
// I_Q^* I_Q; it depends on x - y only.  x and y must lie in Q/3.
cdouble kq_kernel(const LocalizedPiece& piece, double x, double y);

// K_Q at lags s = m h, m = -panels..panels (every difference of two input
// nodes), by FFT autocorrelation of the amplitude lattice.
std::vector<cdouble> kq_profile(const LocalizedPiece& piece);

struct BadSetReport {
    double eps = 0.0;
    double threshold = 0.0;  // |Q|^{-1-eps}
    double measure = 0.0;    // |{ s : |s| < |Q/3|, |K_Q(s)| > threshold }|
    double allowance = 0.0;  // (lQ)^{-eps} |Q|
    double ratio = 0.0;
};
BadSetReport badset_measure(const LocalizedPiece& piece, double eps);

struct NormReport {
    double norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Largest singular value of the rectangle-rule discretization, by power
// iteration on I_Q^* I_Q.  Stops when the Rayleigh quotient changes by at
// most `tol` relatively.
NormReport iq_l2_norm(const LocalizedPiece& piece, double tol = 1e-6, int max_iter = 500);

struct RieszThorinReport {
    double r = 2.0;
    double theta = 1.0;  // 1/r = (1 - theta) + theta/2
    double c_one = 0.0;  // infinity <- 1 constant: sup |a| on the lattice
    double c_two = 0.0;  // 2 <- 2 norm
    double bound = 0.0;  // c_one^{1-theta} c_two^theta
    double measured = 0.0;  // sup ||I_Q f||_{r'} / ||f||_r over the trials
    int trials = 0;
};

// Requires 1 < r <= 2.  Uses the rectangle-rule operator throughout.
RieszThorinReport riesz_thorin_bound(const LocalizedPiece& piece, double r, int trials = 100,
                                     std::uint64_t seed = 1, const NormReport* known_norm = nullptr);

struct SplitReport {
    double numerical_sup = 0.0;   // sup_{0 < |y| <= 2} |e(P(y)) - 1| / |y|
    double analytic_sup = 0.0;    // sup_{0 < |y| <= 2} min(2, sum |lambda| |y|^beta) / |y|
    double coefficient_bound = 0.0;  // 2^d
    double pointwise_ratio = 0.0;    // sup_x |D f(x)| / int_{|y|<=2} |f(x - y)| dy
    double lattice_sup = 0.0;        // sup of the difference kernel on the mesh lags
};

// D is convolution with (e(P(y)) - 1)/y on |y| <= 2 (the near part of
// T_P - T), evaluated on the mesh of f.
SplitReport local_vs_global_split(const MeshSignal& f, const PolynomialPhase& phase);

struct DecayRow {
    int k = 0;
    double norm = 0.0;
    int iterations = 0;
    bool converged = false;
};
struct DecayReport {
    std::vector<DecayRow> rows;
    double slope = 0.0;       // least-squares slope of log2 norm against k
    double fitted_eta = 0.0;  // -slope
};
DecayReport oscillatory_decay(const PolynomialPhase& phase, int k_min, int k_max,
                              PieceOptions options = {});

}  // namespace sparselab
