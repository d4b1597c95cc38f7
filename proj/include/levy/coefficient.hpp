#pragma once

#include "levy/config.hpp"
#include "levy/measures.hpp"

#include <string>
#include <vector>

namespace levy {

/// base + amp·cos(2π·freq·arg + phase). For spatial factors freq is a wave vector.
struct Harmonic {
    double base = 1.0;
    double amp = 0.0;
    Vec freq{0.0, 0.0};
    double phase = 0.0;

    double operator()(double arg) const;
    double at(const Vec& x) const;
    bool constant() const { return amp == 0.0 || (freq[0] == 0.0 && freq[1] == 0.0); }
    double lower() const;
    double upper() const;
    /// ∫_s^t of the factor with scalar argument.
    double integral(double s, double t) const;
};

/// One separable product m_t(t)·m_x(x)·m_r(ln|y|)·m_a(θ/2π).
struct CoefficientTerm {
    Harmonic t, x, r, a;
    double eval(double time, const Vec& pos, const Vec& y) const;
    /// Factor depending on y alone.
    double y_factor(double radius, double angle) const;
};

/// m(t,x,y) = Σ terms, with bounds k ≤ m ≤ K and Hölder data (β, κ).
class CoefficientSpec {
public:
    enum class Form { Constant, TimeSeparable, Expression };

    static CoefficientSpec constant(double value);
    static CoefficientSpec time_separable(Harmonic mt, Harmonic mr, Harmonic ma = {});
    /// Bounds are computed from the terms; supplying k or K (> 0) checks them instead.
    static CoefficientSpec expression(std::vector<CoefficientTerm> terms, double k = 0.0,
                                      double K = 0.0, double beta = 0.5);

    double operator()(double t, const Vec& x, const Vec& y) const;
    Form form() const { return form_; }
    const std::vector<CoefficientTerm>& terms() const { return terms_; }
    double k() const { return k_; }
    double K() const { return K_; }
    double beta() const { return beta_; }

    bool x_dependent() const;
    bool t_dependent() const;
    bool y_dependent() const;

    /// Modulus κ(τ) bounding |m(t,x,y) − m(t,x',y)| for |x − x'| ≤ τ.
    double kappa(double tau) const;
    /// ∫_{|y|≤1} κ(|y|)|y|^{−d−β} dy; infinite when the integral diverges.
    double kappa_integral(int dim) const;

    /// m_R(t,x,y) = m(t,x,Ry)
    CoefficientSpec rescale_y(double R) const;
    /// Replace every x factor by its value at x (used when freezing or for x-free parts).
    CoefficientSpec frozen_at(const Vec& x) const;
    /// Replace the x factor of term k by the constant values[k].
    CoefficientSpec with_x_constants(const std::vector<double>& values) const;

    std::string describe() const;

private:
    void compute_bounds(double k_given, double K_given);

    Form form_ = Form::Constant;
    std::vector<CoefficientTerm> terms_;
    double k_ = 1.0, K_ = 1.0, beta_ = 0.5;
};

/// Polar form of m_term(y)·ν(dy) for an x- and t-free factor of a term.
PolarMeasure weighted_polar(const PolarMeasure& base, const CoefficientTerm& term);

/// Parse `coeff.*` keys (prefix already stripped): form, value, termN.{t,x,r,a}, k, K, beta.
CoefficientSpec coefficient_from_config(const Config& cfg);

}  // namespace levy
