#include "levy/symbol.hpp"

#include "levy/error.hpp"
#include "levy/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace levy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr int kHalfPeriods = 128;
constexpr int kNodesPerOctave = 16;

using GL = boost::math::quadrature::gauss<double, 20>;

// sin u − u without cancellation for small u
double sin_minus_id(double u) {
    if (std::abs(u) < 0.5) {
        const double u2 = u * u;
        return u * u2 *
               (-1.0 / 6 + u2 * (1.0 / 120 + u2 * (-1.0 / 5040 + u2 * (1.0 / 362880 - u2 / 39916800.0))));
    }
    return std::sin(u) - u;
}

// ∫_0^∞ (1 − cos u) u^{−1−α} du
double cos_constant(double alpha) {
    if (std::abs(alpha - 1.0) < 1e-14) return kPi / 2.0;
    return boost::math::tgamma(1.0 - alpha) * std::cos(kPi * alpha / 2.0) / alpha;
}

// ∫_0^∞ (sin u − u·χ) u^{−1−α} du for α ≠ 1 (χ ≡ 0 below 1, ≡ 1 above)
double sin_constant(double alpha) {
    return -boost::math::tgamma(-alpha) * std::sin(kPi * alpha / 2.0);
}

bool closed_form_ok(const PolarMeasure& pm, bool force) {
    return !force && pm.power && std::abs(pm.sigma - pm.power_alpha) < 1e-12;
}

RadialPair closed_pair(const PolarMeasure& pm, double theta, bool need_S) {
    const double a = pm.power_alpha, c = pm.power_coeff;
    RadialPair p;
    p.C = c * cos_constant(a) * std::pow(theta, a);
    if (need_S) {
        if (std::abs(a - 1.0) < 1e-14)
            p.S = c * theta * (1.0 - kEulerGamma - std::log(theta));
        else
            p.S = c * sin_constant(a) * std::pow(theta, a);
    }
    return p;
}

double deriv(const std::function<double(double)>& g, double u, int order) {
    const double h = 0.05 * u;
    switch (order) {
        case 1: return (g(u + h) - g(u - h)) / (2 * h);
        case 2: return (g(u + h) - 2 * g(u) + g(u - h)) / (h * h);
        default:
            return (g(u + 2 * h) - 2 * g(u + h) + 2 * g(u - h) - g(u - 2 * h)) / (2 * h * h * h);
    }
}

// ∫_π^∞ trig(u)·g(u) du: half-period Gauss panels, then an integration-by-parts tail at U = Nπ.
double oscillatory(const std::function<double(double)>& g, bool cosine) {
    double sum = 0.0;
    for (int k = 1; k < kHalfPeriods; ++k) {
        const double a = k * kPi, b = (k + 1) * kPi;
        sum += GL::integrate(
            [&](double u) { return (cosine ? std::cos(u) : std::sin(u)) * g(u); }, a, b);
    }
    const double U = kHalfPeriods * kPi;
    const double cu = (kHalfPeriods % 2 == 0) ? 1.0 : -1.0;
    if (cosine)
        sum += cu * (-deriv(g, U, 1) + deriv(g, U, 3));
    else
        sum += cu * (g(U) - deriv(g, U, 2));
    return sum;
}

RadialPair quadrature_pair(const PolarMeasure& pm, double theta, bool need_S) {
    const auto& rho = pm.rho;
    const std::function<double(double)> g = [&](double u) { return rho(u / theta) / theta; };
    RadialPair p;
    const auto near = numeric::integrate_to_zero(
        [&](double u) {
            const double s = std::sin(0.5 * u);
            return 2.0 * s * s * g(u);
        },
        kPi, 1e-13);
    const auto mass = numeric::integrate_to_infinity(g, kPi, 1e-13);
    if (!near.converged || !mass.converged)
        throw NumericError("symbol quadrature did not converge", std::max(near.error, mass.error));
    p.C = near.value + mass.value - oscillatory(g, true);
    if (!need_S) return p;

    const double sigma = pm.sigma;
    double S = oscillatory(g, false);
    numeric::QuadResult q;
    if (sigma < 1.0 - 1e-12) {
        q = numeric::integrate_to_zero([&](double u) { return std::sin(u) * g(u); }, kPi, 1e-13);
        S += q.value;
    } else if (sigma > 1.0 + 1e-12) {
        q = numeric::integrate_to_zero([&](double u) { return sin_minus_id(u) * g(u); }, kPi, 1e-13);
        const auto lin = numeric::integrate_to_infinity([&](double u) { return u * g(u); }, kPi, 1e-13);
        if (!lin.converged) throw NumericError("symbol compensator diverges", lin.error);
        S += q.value - lin.value;
    } else {
        // χ = 1 on |y| ≤ 1, i.e. u ≤ θ
        const double b = std::min(theta, kPi);
        q = numeric::integrate_to_zero([&](double u) { return sin_minus_id(u) * g(u); }, b, 1e-13);
        S += q.value;
        if (theta < kPi)
            S += numeric::integrate_octaves([&](double u) { return std::sin(u) * g(u); }, theta, kPi, 4);
        else if (theta > kPi)
            S -= numeric::integrate_octaves([&](double u) { return u * g(u); }, kPi, theta, 4);
    }
    if (!q.converged) throw NumericError("symbol quadrature did not converge", q.error);
    p.S = S;
    return p;
}

double lagrange4(const double* x, const double* y, double t) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j) {
        double l = 1.0;
        for (int m = 0; m < 4; ++m)
            if (m != j) l *= (t - x[m]) / (x[j] - x[m]);
        s += l * y[j];
    }
    return s;
}

}  // namespace

RadialPair radial_integrals(const PolarMeasure& pm, double theta, bool need_S, bool force) {
    if (!(theta > 0.0)) return {};
    if (closed_form_ok(pm, force)) return closed_pair(pm, theta, need_S);
    return quadrature_pair(pm, theta, need_S);
}

namespace {
cplx evaluate(const PolarMeasure& pm, const Vec& xi, bool closed,
              const std::function<cplx(double)>& dir);
}  // namespace

// ln C and S/C tabulated on a uniform grid in ln θ.
struct SymbolEvaluator::Table {
    double l0 = 0.0, dl = 0.0;
    std::vector<double> lnC, ratio;

    RadialPair at(double theta) const {
        const int n = static_cast<int>(lnC.size());
        const double s = (std::log(theta) - l0) / dl;
        if (s <= 0.0 || s >= n - 1) {
            // power-law extension from the end segment
            const int i = s <= 0.0 ? 0 : n - 2;
            const double slope = (lnC[i + 1] - lnC[i]) / dl;
            const double lc = lnC[i] + slope * (std::log(theta) - (l0 + i * dl));
            const double C = std::exp(lc);
            return {C, C * (s <= 0.0 ? ratio.front() : ratio.back())};
        }
        int i = std::clamp(static_cast<int>(s) - 1, 0, n - 4);
        double xs[4];
        for (int j = 0; j < 4; ++j) xs[j] = i + j;
        const double C = std::exp(lagrange4(xs, &lnC[i], s));
        return {C, C * lagrange4(xs, &ratio[i], s)};
    }
};

SymbolEvaluator::SymbolEvaluator(PolarMeasure pm, double xi_min, double xi_max, SymbolOptions opt)
    : pm_(std::move(pm)), opt_(opt) {
    need_S_ = !pm_.symmetric();
    closed_ = closed_form_ok(pm_, opt_.force_quadrature);
    if (closed_) return;
    if (!(xi_min > 0.0) || !(xi_max >= xi_min)) throw DomainError("symbol table needs 0 < xi_min <= xi_max");
    auto tab = std::make_shared<Table>();
    // directions nearly orthogonal to ξ reach small θ in d = 2
    const double lo = 2.0 * kPi * xi_min * (pm_.dim == 2 ? std::ldexp(1.0, -12) : 0.5);
    const double hi = 2.0 * kPi * xi_max * 2.0;
    tab->dl = std::log(2.0) / kNodesPerOctave;
    tab->l0 = std::log(lo);
    const int n = std::max(4, static_cast<int>(std::ceil((std::log(hi) - tab->l0) / tab->dl)) + 1);
    for (int i = 0; i < n; ++i) {
        const RadialPair p = quadrature_pair(pm_, std::exp(tab->l0 + i * tab->dl), need_S_);
        tab->lnC.push_back(std::log(p.C));
        tab->ratio.push_back(need_S_ ? p.S / p.C : 0.0);
    }
    table_ = tab;
    if (pm_.dim == 2 && pm_.uniform && pm_.isotropic) {
        // ψ depends on |ξ| only: tabulate the angular integral once
        auto rad = std::make_shared<Table>();
        rad->dl = tab->dl;
        rad->l0 = std::log(0.5 * xi_min);
        const int m = std::max(4, static_cast<int>(std::ceil((std::log(2.0 * xi_max) - rad->l0) / rad->dl)) + 1);
        for (int i = 0; i < m; ++i) {
            const Vec x{std::exp(rad->l0 + i * rad->dl), 0.0};
            const cplx v = evaluate(pm_, x, false, [this](double th) { return direction(th); });
            rad->lnC.push_back(std::log(-v.real()));
            rad->ratio.push_back(0.0);
        }
        radial_ = rad;
    }
}

RadialPair SymbolEvaluator::pair(double theta) const {
    if (closed_) return closed_pair(pm_, theta, need_S_);
    return table_->at(theta);
}

cplx SymbolEvaluator::direction(double theta) const {
    if (theta == 0.0) return 0.0;
    const RadialPair p = pair(std::abs(theta));
    return {-p.C, need_S_ ? (theta > 0.0 ? p.S : -p.S) : 0.0};
}

namespace {

// ∫ over the circle of a(θ)·I(2π|ξ| cos(θ − φ)) dθ, split at the two kinks.
template <class Dir>
cplx uniform_angular(const PolarMeasure& pm, const Vec& xi, Dir&& dir) {
    const double r = std::hypot(xi[0], xi[1]);
    const double phi = std::atan2(xi[1], xi[0]);
    thread_local boost::math::quadrature::tanh_sinh<double> ts;
    auto piece = [&](double a, double b, bool imag) {
        return ts.integrate(
            [&](double th) {
                const cplx v = dir(2.0 * kPi * r * std::cos(th - phi));
                return pm.angular(th) * (imag ? v.imag() : v.real());
            },
            a, b, 1e-11);
    };
    const double a = phi - kPi / 2, b = phi + kPi / 2, c = phi + 3 * kPi / 2;
    double re = piece(a, b, false) + piece(b, c, false);
    double im = 0.0;
    if (!pm.symmetric()) im = piece(a, b, true) + piece(b, c, true);
    return {re, im};
}

cplx evaluate(const PolarMeasure& pm, const Vec& xi, bool closed,
              const std::function<cplx(double)>& dir) {
    const double r = std::hypot(xi[0], pm.dim == 2 ? xi[1] : 0.0);
    if (r == 0.0) return 0.0;
    if (!pm.uniform) {
        cplx s = 0.0;
        for (const auto& at : pm.atoms) {
            double proj = xi[0] * std::cos(at.angle);
            if (pm.dim == 2) proj += xi[1] * std::sin(at.angle);
            if (std::abs(proj) < 1e-15 * r) continue;
            s += at.weight * dir(2.0 * kPi * proj);
        }
        return s;
    }
    if (pm.isotropic && closed) {
        // ∫|cos|^α over the circle
        const double a = pm.power_alpha;
        const double ang = 2.0 * std::sqrt(kPi) * boost::math::tgamma((a + 1.0) / 2.0) /
                           boost::math::tgamma(a / 2.0 + 1.0);
        return {dir(2.0 * kPi * r).real() * ang * pm.angular(0.0), 0.0};
    }
    return uniform_angular(pm, Vec{xi[0], xi[1]}, dir);
}

}  // namespace

cplx SymbolEvaluator::operator()(const Vec& xi) const {
    if (radial_) {
        const double r = std::hypot(xi[0], xi[1]);
        if (r == 0.0) return 0.0;
        return -radial_->at(r).C;
    }
    return evaluate(pm_, xi, closed_, [this](double th) { return direction(th); });
}

cplx psi_polar(const PolarMeasure& pm, const Vec& xi, const SymbolOptions& opt) {
    const bool closed = closed_form_ok(pm, opt.force_quadrature);
    const bool need_S = !pm.symmetric();
    auto dir = [&](double th) -> cplx {
        if (th == 0.0) return 0.0;
        const RadialPair p = radial_integrals(pm, std::abs(th), need_S, opt.force_quadrature);
        return {-p.C, need_S ? (th > 0.0 ? p.S : -p.S) : 0.0};
    };
    return evaluate(pm, xi, closed, dir);
}

SymbolValue psi(const MeasureSpec& spec, const Vec& xi, const SymbolOptions& opt) {
    const cplx v = psi_polar(polar(spec), xi, opt);
    return {v.real(), v.imag(), xi};
}

namespace {

void require_x_free(const CoefficientSpec& coeff) {
    if (coeff.x_dependent())
        throw DomainError("coefficient depends on x: use the frozen-coefficient entry point");
}

}  // namespace

SymbolValue psi_m(const MeasureSpec& spec, const CoefficientSpec& coeff, double t, const Vec& xi) {
    require_x_free(coeff);
    const PolarMeasure base = polar(spec);
    cplx s = 0.0;
    for (const auto& term : coeff.terms())
        s += term.t(t) * term.x.lower() * psi_polar(weighted_polar(base, term), xi);
    return {s.real(), s.imag(), xi};
}

SymbolValue psi_time_avg(const MeasureSpec& spec, const CoefficientSpec& coeff, double s, double t,
                         const Vec& xi) {
    if (!(s >= 0.0 && t > s)) throw DomainError("psi_time_avg needs 0 <= s < t");
    require_x_free(coeff);
    const PolarMeasure base = polar(spec);
    cplx v = 0.0;
    for (const auto& term : coeff.terms())
        v += term.t.integral(s, t) * term.x.lower() * psi_polar(weighted_polar(base, term), xi);
    return {v.real(), v.imag(), xi};
}

SymbolValue psi_fractional(const MeasureSpec& spec, double delta, const Vec& xi) {
    if (!(delta > 0.0 && delta < 2.0)) throw DomainError("fractional order must lie in (0, 2)");
    const SymbolValue p = psi(symmetrize(spec), xi);
    const double mag = std::max(0.0, -p.re);
    return {-std::pow(mag, delta), 0.0, xi};
}

TermSymbols term_symbols(const MeasureSpec& spec, const CoefficientSpec& coeff, double xi_min,
                         double xi_max) {
    TermSymbols ts;
    const PolarMeasure base = polar(spec);
    for (const auto& term : coeff.terms()) {
        ts.time.push_back(term.t);
        ts.space.push_back(term.x);
        ts.eval.emplace_back(weighted_polar(base, term), xi_min, xi_max);
    }
    return ts;
}

SymbolBoundReport verify_symbol_bounds(const MeasureSpec& spec, const CoefficientSpec* coeff,
                                       const std::vector<Vec>& xi_grid,
                                       const std::vector<double>& R_grid) {
    if (xi_grid.empty() || R_grid.empty()) throw DomainError("symbol bounds need non-empty grids");
    SymbolBoundReport rep;
    rep.lower = std::numeric_limits<double>::infinity();
    const double k = coeff ? coeff->k() : 1.0;
    for (double R : R_grid) {
        const MeasureSpec tilde = rescale(spec, R);
        const RadialProfile w = w_profile(tilde);
        const PolarMeasure base = polar(tilde);
        std::vector<PolarMeasure> parts;
        std::vector<double> factors;
        if (coeff) {
            const CoefficientSpec cR = coeff->rescale_y(R);
            for (const auto& term : cR.terms()) {
                parts.push_back(weighted_polar(base, term));
                factors.push_back(term.t(0.0) * term.x.at({0.0, 0.0}));
            }
        } else {
            parts.push_back(base);
            factors.push_back(1.0);
        }
        for (const auto& xi : xi_grid) {
            const double r = std::hypot(xi[0], spec.dim() == 2 ? xi[1] : 0.0);
            if (r == 0.0) continue;
            cplx v = 0.0;
            for (std::size_t i = 0; i < parts.size(); ++i) v += factors[i] * psi_polar(parts[i], xi);
            const double wv = w(1.0 / r);
            const double up = std::abs(v) * wv;
            const double lo = -v.real() * wv / k;
            if (up > rep.upper) {
                rep.upper = up;
                rep.upper_xi = xi;
                rep.upper_R = R;
            }
            if (lo < rep.lower) {
                rep.lower = lo;
                rep.lower_xi = xi;
                rep.lower_R = R;
            }
        }
    }
    rep.ok = std::isfinite(rep.upper) && rep.lower > 0.0;
    return rep;
}

}  // namespace levy
