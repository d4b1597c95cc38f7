#pragma once

#include "levy/coefficient.hpp"
#include "levy/measures.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace levy {

using cplx = std::complex<double>;

struct SymbolValue {
    double re = 0.0;
    double im = 0.0;
    Vec xi{0.0, 0.0};
    cplx value() const { return {re, im}; }
};

struct SymbolOptions {
    bool force_quadrature = false;  // skip closed forms (used to cross-check them)
};

/// C(θ) = ∫ 2sin²(θr/2) ρ(r) dr and S(θ) = ∫ (sin θr − θr·χ_σ(r)) ρ(r) dr for θ > 0.
struct RadialPair {
    double C = 0.0;
    double S = 0.0;
};

RadialPair radial_integrals(const PolarMeasure& pm, double theta, bool need_S,
                            bool force_quadrature = false);

/// Evaluates ψ for one polar measure at many frequencies. Non closed-form radial parts
/// are tabulated once on a log-θ grid covering [xi_min, xi_max].
class SymbolEvaluator {
public:
    SymbolEvaluator(PolarMeasure pm, double xi_min, double xi_max, SymbolOptions opt = {});

    cplx operator()(const Vec& xi) const;
    const PolarMeasure& measure() const { return pm_; }

private:
    struct Table;

    RadialPair pair(double theta) const;
    cplx direction(double theta) const;  // −C(|θ|) + i·sgn(θ)·S(|θ|)

    PolarMeasure pm_;
    SymbolOptions opt_;
    bool closed_ = false;
    bool need_S_ = false;
    std::shared_ptr<const Table> table_;
    std::shared_ptr<const Table> radial_;  // isotropic d = 2: ψ as a function of |ξ|
};

/// ψ^ν(ξ) with the χ_σ truncation set by the measure's order σ.
SymbolValue psi(const MeasureSpec& spec, const Vec& xi, const SymbolOptions& opt = {});
cplx psi_polar(const PolarMeasure& pm, const Vec& xi, const SymbolOptions& opt = {});

/// ψ^{m,ν}(t, ξ) for an x-independent coefficient.
SymbolValue psi_m(const MeasureSpec& spec, const CoefficientSpec& coeff, double t, const Vec& xi);

/// ∫_s^t ψ^{m,ν}(r, ξ) dr for an x-independent coefficient.
SymbolValue psi_time_avg(const MeasureSpec& spec, const CoefficientSpec& coeff, double s, double t,
                         const Vec& xi);

/// −(−ψ^{ν_sym}(ξ))^δ
SymbolValue psi_fractional(const MeasureSpec& spec, double delta, const Vec& xi);

/// Per-term symbol evaluators of m(t,y)ν: ψ^{m,ν}(t,ξ) = Σ_k m_t^k(t)·m_x^k·ψ_k(ξ).
struct TermSymbols {
    std::vector<Harmonic> time;   // m_t^k
    std::vector<Harmonic> space;  // m_x^k
    std::vector<SymbolEvaluator> eval;
};

TermSymbols term_symbols(const MeasureSpec& spec, const CoefficientSpec& coeff, double xi_min,
                         double xi_max);

struct SymbolBoundReport {
    double upper = 0.0;  // sup |ψ^{π̃_R}(ξ)|·w_R(1/|ξ|)
    double lower = 0.0;  // inf −ℜψ^{π̃_R}(ξ)·w_R(1/|ξ|)/k
    Vec upper_xi{}, lower_xi{};
    double upper_R = 1.0, lower_R = 1.0;
    bool ok = false;     // upper finite and lower positive
};

/// w_R is the scale profile of ν̃_R. The coefficient (if any) is taken at t = 0, x = 0.
SymbolBoundReport verify_symbol_bounds(const MeasureSpec& spec, const CoefficientSpec* coeff,
                                       const std::vector<Vec>& xi_grid,
                                       const std::vector<double>& R_grid);

}  // namespace levy
