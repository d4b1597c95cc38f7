#pragma once

#include "levy/coefficient.hpp"
#include "levy/grid.hpp"
#include "levy/measures.hpp"
#include "levy/symbol.hpp"

#include <vector>

namespace levy {

/// ∫_s^t ψ^{m,ν}(r, ξ)dr for a coefficient m = m(t, y), term by term.
class Propagator {
public:
    Propagator(const MeasureSpec& spec, const CoefficientSpec& coeff, double xi_min, double xi_max);

    /// ψ_k(ξ)·m_x^k for every term k.
    std::vector<cplx> parts(const Vec& xi) const;
    /// ∫_s^t m_t^k for every term k.
    std::vector<double> weights(double s, double t) const;
    std::vector<double> rates(double t) const;  // m_t^k(t)
    cplx exponent(double s, double t, const Vec& xi) const;
    cplx symbol(double t, const Vec& xi) const;
    std::size_t terms() const { return eval_.size(); }

private:
    std::vector<Harmonic> time_;
    std::vector<double> space_;
    std::vector<SymbolEvaluator> eval_;
};

struct DensityField {
    SpectralGrid grid;
    Field values;
    double s = 0.0, t = 1.0;
    double mass_defect = 0.0;    // |1 − Σ values·h^d|
    double imag_residue = 0.0;   // largest imaginary part discarded after inversion
    double tail_estimate = 0.0;  // (t − s)·K·δ_ν(L): mass that periodization folds back
    double peak() const;
};

/// a(τ) = inf{r : w_ν(r) ≥ τ}
double space_scale(const MeasureSpec& spec, double tau);

/// Inverse transform of exp{∫_s^t ψ^{m,ν}}. Throws GridTooSmallError when L < 8·a(t − s)
/// or the transform has not decayed (|e^{∫ψ}| > 1e-6) at the edge of the lattice.
DensityField transition_density(const MeasureSpec& spec, const CoefficientSpec& coeff, double s,
                                double t, const SpectralGrid& grid);

/// Inverse transform of exp(E) for a sampled exponent; no admissibility checks.
DensityField density_from_exponent(const SpectralGrid& grid, const Spectrum& exponent);

struct ScalingReport {
    double discrepancy = 0.0;  // max |p − R^{−d}p̄(·/R)| / max p
    double R = 1.0;
};

/// Compares p^{m,ν}(s,t,·) with R^{−d}p̄^{m_R,ν̃_R}(s,t,·/R), R = a(t − s); the right side is
/// built from the rescaled measure and coefficient on the grid of half-width L/R.
ScalingReport check_scaling_identity(const MeasureSpec& spec, const CoefficientSpec& coeff,
                                     double s, double t, const SpectralGrid& grid);

/// F^{-1}[ψ^π·F field]
Field apply_generator(const MeasureSpec& pi, const SpectralGrid& grid, const Field& field);

/// ∫(1 + |x|^{α₂})|D^η L^{π̃_R} p̄^{m_R,ν̃_R}(s,t,x)|dx with R = a(t − s), π̃_R = w_ν(R)π(R·).
/// The grid is in the normalized variable; η differentiates along the first axis.
double weighted_generator_l1(const MeasureSpec& pi, const MeasureSpec& spec,
                             const CoefficientSpec& coeff, double s, double t, double alpha2,
                             int eta, const SpectralGrid& grid);

struct HormanderParams {
    double beta = 0.5;
    std::vector<double> c_grid{0.25, 1.0, 4.0};
    std::vector<double> s_grid{0.25, 0.5, 0.75};  // part (i) lower limits, t fixed
    double t = 1.0;
    double b = 0.5;                                 // part (ii) upper limit of r
    std::vector<double> h_grid{0.01, 0.1, 1.0};
    double b3 = 0.25, s3 = 0.5;                     // part (iii): b < s < t
    std::vector<double> t3_grid{0.5, 0.6, 0.75, 1.0};
    int subintervals = 32;
};

struct HormanderReport {
    double ratio_i = 0.0;    // sup LHS/(c^{−β}a(t−s)^β)
    double ratio_ii = 0.0;   // sup LHS/(|h|a(t−b)^{−1})
    double ratio_iii = 0.0;  // sup LHS/((t−s)(s−b)^{−1}) over t > s
    double lhs_iii_equal = 0.0;  // part (iii) LHS at t = s (exactly 0)
    std::vector<double> lhs_ii;  // part (ii) LHS per h, for slope checks
};

/// Time integrals by 4-point Gauss on `subintervals` pieces; each r uses the normalized grid
/// of scale a(t − r), so the supplied grid is in normalized units.
HormanderReport hormander_suite(const MeasureSpec& spec, const CoefficientSpec& coeff,
                                const MeasureSpec& pi, const HormanderParams& params,
                                const SpectralGrid& grid);

/// γ and the constant c with j(r) = c·r^{−d}/γ(r) for RadialStable and IsotropicUnimodal.
struct UnimodalData {
    RadialProfile gamma;
    double c = 1.0;
};
UnimodalData unimodal_data(const MeasureSpec& spec);

/// η^d_{a₁,b₁}(t, x) with a_γ the right-continuous inverse of r ↦ 1/γ(1/r).
double tail_envelope(const MeasureSpec& spec, double t, double x, double a1, double b1);

/// p^ν(t, r) for isotropic symmetric measures by a radial transform of e^{tψ}
/// (cosine transform in d = 1, Hankel transform in d = 2).
double radial_density(const MeasureSpec& spec, double t, double r);

struct EnvelopeFit {
    double c1 = 0.0;  // sup p/η over the grid
    double t_at = 0.0, x_at = 0.0;
};
EnvelopeFit fit_envelope(const MeasureSpec& spec, const std::vector<double>& t_grid,
                         const std::vector<double>& x_grid, double a1, double b1);

struct KernelReport {
    Field kernel;       // k^{ν;δ}(·, z) on the grid
    double l1 = 0.0;    // ∫|k|dy
    double w_delta = 0.0;
    double ratio = 0.0;  // l1 / w(|z|)^δ
};

/// k^{ν;δ}(y, z) by log-time quadrature of the density differences; uses ν_sym unless δ = 1.
KernelReport difference_kernel(const MeasureSpec& spec, double delta, const Vec& z,
                               const SpectralGrid& grid);

struct ReconstructionReport {
    double c = 0.0;
    double rel_error = 0.0;
};

/// Fits c in u(x+z) − u(x) = c∫k^{ν;δ}(y,z)L_δ^ν u(x−y)dy for a band-limited u.
ReconstructionReport check_difference_reconstruction(const MeasureSpec& spec, double delta,
                                                     const Vec& z, const SpectralGrid& grid,
                                                     const Field& u);

/// L¹ distance between p(0,t₂) and p(0,t₁) ⋆ p(t₁,t₂).
double chapman_kolmogorov(const MeasureSpec& spec, const CoefficientSpec& coeff, double t1,
                          double t2, const SpectralGrid& grid);

struct GreenReport {
    std::vector<double> radii;
    std::vector<double> ratios;  // ∫₀^∞p(t,a)dt / (γ(|a|)/|a|^d)
    double sup = 0.0;
};

/// ∫₀^∞ p^ν(t, a)dt against γ(|a|)/|a|^d for an isotropic unimodal measure.
GreenReport green_ratio(const MeasureSpec& spec, const std::vector<double>& radii);

}  // namespace levy
