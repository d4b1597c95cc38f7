#pragma once

#include "levy/coefficient.hpp"
#include "levy/grid.hpp"
#include "levy/measures.hpp"
#include "levy/spaces.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace levy {

/// f sampled at n_t + 1 uniform nodes on [0, T].
Trajectory sample_forcing(const SpectralGrid& grid, double T, int n_t,
                          const std::function<double(double, const Vec&)>& f);

/// L^{m,ν} for a full coefficient m(t,x,y) = Σ m_t·m_x·m_r·m_a.
///
/// The y-integral runs over a log-radial × angular node set; φ(x + y) is the trigonometric
/// interpolant of the grid field, so each term reduces to a multiplier on the grid's band
/// followed by the pointwise factor m_t(t)·m_x(x).
class NonlocalOperator {
public:
    NonlocalOperator(const MeasureSpec& spec, const CoefficientSpec& coeff, const SpectralGrid& grid);
    ~NonlocalOperator();

    Field apply(const Field& field, double t) const;
    /// Per-term multipliers (y-integral of the node set at each lattice frequency).
    const std::vector<Spectrum>& multipliers() const { return mult_; }
    std::size_t radial_nodes() const { return nodes_; }

private:
    SpectralGrid grid_;
    CoefficientSpec coeff_;
    std::vector<Spectrum> mult_;
    std::vector<Field> xfac_;
    std::size_t nodes_ = 0;
};

Field apply_nonlocal(const MeasureSpec& spec, const CoefficientSpec& coeff, const Field& field, double t,
                     const SpectralGrid& grid);

struct SolveDiagnostics {
    double p = 2.0;
    double lambda = 0.0;
    double T = 0.0;
    double residual = 0.0;
    double u_norm = 0.0;    // |u|_{L_p(E)}
    double Lu_norm = 0.0;   // |L^ν u|_{L_p(E)}
    double dtu_norm = 0.0;  // |∂_t u|_{L_p(E)}
    double f_norm = 0.0;
    double rho_lambda = 0.0;  // T ∧ 1/λ
    double N_main = 0.0;      // (|∂_t u| + |L^ν u|)/|f|
    double N_zero = 0.0;      // |u|/(ρ_λ|f|)
    bool zero_solution = false;
    bool p_above_d_over_beta = false;  // recorded, not enforced
    std::vector<int> iterations;       // Picard iterations per homotopy level
};

struct SolveResult {
    Trajectory u;
    Trajectory forcing_trace;  // F = L^{m,ν}u − λu + f, so u(t) = ∫₀^t F
    SolveDiagnostics diag;
};

/// û(t_{i+1}) = e^{E_i}û(t_i) + h[φ₁(E_i)f̂_i + φ₂(E_i)(f̂_{i+1} − f̂_i)] with E_i = ∫ψ^{m,ν} − λh
/// over the step, i.e. exact propagation of the symbol with f̂ linear in time on each step.
SolveResult solve_duhamel(const MeasureSpec& spec, const CoefficientSpec& coeff, double lambda, const Trajectory& f,
                          double p = 2.0);

struct FrozenOptions {
    int homotopy = 4;
    double tol = 1e-10;
    int max_iter = 50;
    double p = 2.0;
};

/// Picard iteration around the spatially averaged coefficient m̄, continued through
/// M_τ = τL^{m,ν} + (1 − τ)L^ν for τ = 1/H, ..., 1.
SolveResult solve_frozen_iteration(const MeasureSpec& spec, const CoefficientSpec& coeff, double lambda,
                                   const Trajectory& f, const FrozenOptions& opt = {});

/// max_i |u(t_i) − ∫₀^{t_i}(L^{m,ν}u − λu + f)|_{L₂} / (|u|_{L₂(E)} + |f|_{L₂(E)}).
double residual(const SolveResult& result, const MeasureSpec& spec, const CoefficientSpec& coeff, double lambda,
                const Trajectory& f);

/// Fills the norm diagnostics of `result` for the base operator L^ν.
SolveDiagnostics estimate_constants(const SolveResult& result, const MeasureSpec& spec, const Trajectory& f,
                                    double lambda, double p);

}  // namespace levy
