#include "levy/solver.hpp"

#include "levy/density.hpp"
#include "levy/error.hpp"
#include "levy/quadrature.hpp"
#include "levy/symbol.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace levy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
using GL20 = boost::math::quadrature::gauss<double, 20>;
using GL10 = boost::math::quadrature::gauss<double, 10>;

constexpr std::size_t kNodeBudget = 200'000'000;

// ∫₀^∞ g(v)dv over GL10 panels, symmetric nodes unrolled
template <class F>
double gl10(const F& f, double a, double b) {
    const auto& x = GL10::abscissa();
    const auto& w = GL10::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * (f(c + h * x[i]) + f(c - h * x[i]));
    return s * h;
}

// C(u) = ∫(1 − cos ur)ρ dr and S(u) = ∫(sin ur − ur·χ(r))ρ dr for u > 0, by a fixed node set
// in v = ur: graded panels up to π/2, quarter-period panels up to V, Taylor moments below and
// integration by parts above.
class RadialTransform {
public:
    RadialTransform(std::function<double(double)> rho, double sigma) : rho_(std::move(rho)), sigma_(sigma) {
        for (double v = kVlo; v < 0.5 * kPi; v *= 2.0) edges_.push_back(v);
        for (double v = 0.5 * kPi; v <= kV + 1e-9; v += 0.5 * kPi) edges_.push_back(v);
    }

    std::size_t nodes_per_value() const { return 20 * edges_.size(); }

    std::pair<double, double> operator()(double u) const {
        const double top = sigma_ < 1.0 ? 0.0 : sigma_ == 1.0 ? 1.0 : std::numeric_limits<double>::infinity();
        // χ(r) = 1 on r ≤ top
        const double vlo = std::min(kVlo, 0.5 * u * std::min(1.0, top > 0.0 ? top : 1.0));
        const double rlo = vlo / u;
        auto moment = [&](int j) {
            return numeric::integrate_to_zero([&](double r) { return std::pow(r, j) * rho_(r); }, rlo, 1e-12).value;
        };
        double C = u * u / 2.0 * moment(2) - std::pow(u, 4) / 24.0 * moment(4) + std::pow(u, 6) / 720.0 * moment(6);
        double S = -std::pow(u, 3) / 6.0 * moment(3) + std::pow(u, 5) / 120.0 * moment(5);
        if (top == 0.0) S += u * moment(1);

        auto chi = [&](double r) { return r <= top ? 1.0 : 0.0; };
        auto fc = [&](double v) { return (1.0 - std::cos(v)) * rho_(v / u) / u; };
        auto fs = [&](double v) { return (std::sin(v) - v * chi(v / u)) * rho_(v / u) / u; };
        std::vector<double> e{vlo};
        for (double x : edges_)
            if (x > vlo) e.push_back(x);
        if (top > 0.0 && std::isfinite(top) && u * top > vlo && u * top < kV) {
            e.push_back(u * top);
            std::sort(e.begin(), e.end());
        }
        for (std::size_t i = 1; i < e.size(); ++i) {
            C += gl10(fc, e[i - 1], e[i]);
            S += gl10(fs, e[i - 1], e[i]);
        }

        // r > R: tail mass, three integration-by-parts terms for the oscillatory part
        const double R = e.back() / u;
        const double d = 1e-3 * R;
        const double r0 = rho_(R), r1 = (rho_(R + d) - rho_(R - d)) / (2.0 * d),
                     r2 = (rho_(R + d) - 2.0 * r0 + rho_(R - d)) / (d * d);
        const double su = std::sin(u * R), cu = std::cos(u * R);
        const double cos_tail = -su * r0 / u - cu * r1 / (u * u) + su * r2 / std::pow(u, 3);
        const double sin_tail = cu * r0 / u - su * r1 / (u * u) - cu * r2 / std::pow(u, 3);
        C += numeric::integrate_to_infinity(rho_, R, 1e-12).value - cos_tail;
        S += sin_tail;
        if (top > R) {
            auto rr = [&](double r) { return r * rho_(r); };
            S -= u * (std::isfinite(top) ? numeric::integrate_octaves(rr, R, top, 4)
                                         : numeric::integrate_to_infinity(rr, R, 1e-12).value);
        }
        return {C, S};
    }

private:
    static constexpr double kVlo = 1e-2;
    static constexpr double kV = 2048.0;
    std::function<double(double)> rho_;
    double sigma_;
    std::vector<double> edges_;
};

// ln C and S/C on a log-u table, 32 per octave, cubic Lagrange in ln u.
class TransformTable {
public:
    TransformTable(const RadialTransform& rt, double u_lo, double u_hi, std::size_t& nodes) {
        const double step = std::log(2.0) / 32.0;
        l0_ = std::log(u_lo) - 2.0 * step;
        step_ = step;
        const int count = static_cast<int>(std::ceil((std::log(u_hi) - l0_) / step)) + 3;
        nodes += static_cast<std::size_t>(count) * rt.nodes_per_value();
        if (nodes > kNodeBudget)
            throw ResourceError("nonlocal quadrature needs " + std::to_string(nodes) + " radial nodes (budget " +
                                std::to_string(kNodeBudget) + ")");
        for (int i = 0; i < count; ++i) {
            const auto [C, S] = rt(std::exp(l0_ + i * step));
            lc_.push_back(std::log(C));
            ratio_.push_back(S / C);
        }
    }

    cplx operator()(double u) const {
        if (u == 0.0) return 0.0;
        const double au = std::abs(u);
        const double x = (std::log(au) - l0_) / step_;
        const int n = static_cast<int>(lc_.size());
        double lc, q;
        if (x <= 0.0 || x >= n - 1) {
            // power-law extension from the end cells
            const int i = x <= 0.0 ? 0 : n - 2;
            const double f = x - i;
            lc = lc_[i] + f * (lc_[i + 1] - lc_[i]);
            q = x <= 0.0 ? ratio_[0] : ratio_[n - 1];
        } else {
            const int i = std::clamp(static_cast<int>(std::floor(x)) - 1, 0, n - 4);
            const double f = x - i;
            lc = lagrange(&lc_[i], f);
            q = lagrange(&ratio_[i], f);
        }
        const double C = std::exp(lc);
        return {-C, (u > 0.0 ? 1.0 : -1.0) * q * C};
    }

private:
    static double lagrange(const double* y, double f) {
        const double a = f, b = f - 1.0, c = f - 2.0, d = f - 3.0;
        return -y[0] * b * c * d / 6.0 + y[1] * a * c * d / 2.0 - y[2] * a * b * d / 2.0 + y[3] * a * b * c / 6.0;
    }

    double l0_ = 0.0, step_ = 1.0;
    std::vector<double> lc_, ratio_;
};

Spectrum term_multiplier(const PolarMeasure& pm, const SpectralGrid& grid, std::size_t& nodes) {
    const RadialTransform rt(pm.rho, pm.sigma);
    const double u_lo = 2.0 * kPi * grid.xi_min() * (grid.dim == 2 ? 1.0 / 64.0 : 1.0);
    const double u_hi = 2.0 * kPi * grid.xi_max();
    const TransformTable F(rt, u_lo, u_hi, nodes);
    Spectrum m(grid.size(), 0.0);
    const bool atoms = !pm.atoms.empty() && !pm.uniform;
    static thread_local boost::math::quadrature::tanh_sinh<double> ts;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Vec xi = grid.frequency(i);
        if (xi[0] == 0.0 && xi[1] == 0.0) continue;
        if (atoms) {
            cplx s = 0.0;
            for (const auto& a : pm.atoms) {
                const double zx = std::cos(a.angle), zy = grid.dim == 2 ? std::sin(a.angle) : 0.0;
                s += a.weight * F(2.0 * kPi * (xi[0] * zx + xi[1] * zy));
            }
            m[i] = s;
            continue;
        }
        // u(θ) = 2π|ξ|cos(θ − φ) changes sign at φ ± π/2; integrate each half separately
        const double k = 2.0 * kPi * std::hypot(xi[0], xi[1]);
        const double phi = std::atan2(xi[1], xi[0]);
        cplx s = 0.0;
        for (double start : {phi - 0.5 * kPi, phi + 0.5 * kPi}) {
            auto re = [&](double th) { return pm.angular(th) * F(k * std::cos(th - phi)).real(); };
            auto im = [&](double th) { return pm.angular(th) * F(k * std::cos(th - phi)).imag(); };
            s += cplx(ts.integrate(re, start, start + kPi, 1e-11), ts.integrate(im, start, start + kPi, 1e-11));
        }
        m[i] = s;
    }
    return m;
}

cplx phi1(cplx z) {
    if (std::abs(z) < 0.1) {
        cplx s = 1.0, term = 1.0;
        for (int k = 2; k <= 12; ++k) {
            term *= z / double(k);
            s += term;
        }
        return s;
    }
    return (std::exp(z) - 1.0) / z;
}

cplx phi2(cplx z) {
    if (std::abs(z) < 0.1) {
        cplx s = 0.5, term = 0.5;
        for (int k = 3; k <= 13; ++k) {
            term *= z / double(k);
            s += term;
        }
        return s;
    }
    return (std::exp(z) - 1.0 - z) / (z * z);
}

void check_forcing(const Trajectory& f) {
    if (f.times.size() < 2 || f.times.size() != f.fields.size())
        throw DomainError("forcing needs at least two time nodes with one field each");
    if (f.times.front() != 0.0) throw DomainError("forcing must start at t = 0");
    for (std::size_t i = 1; i < f.times.size(); ++i)
        if (!(f.times[i] > f.times[i - 1])) throw DomainError("forcing time nodes must increase");
    for (const auto& v : f.fields)
        if (v.size() != f.grid.size()) throw DomainError("forcing field does not match the grid");
}

// Duhamel stepping on precomputed per-term symbol parts.
class DuhamelStepper {
public:
    DuhamelStepper(const MeasureSpec& spec, const CoefficientSpec& coeff, const SpectralGrid& grid)
        : grid_(grid), P_(spec, coeff, grid.xi_min(), grid.xi_max()), tr_(grid) {
        parts_.resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Vec xi = grid.frequency(i);
            parts_[i] = (xi[0] == 0.0 && xi[1] == 0.0) ? std::vector<cplx>(P_.terms(), 0.0) : P_.parts(xi);
        }
    }

    Trajectory solve(double lambda, const Trajectory& f) const {
        Trajectory u{grid_, f.times, {}};
        u.fields.push_back(Field(grid_.size(), 0.0));
        Spectrum uh(grid_.size(), 0.0);
        Spectrum f0 = tr_.forward(f.fields[0]);
        for (std::size_t n = 1; n < f.times.size(); ++n) {
            const double h = f.times[n] - f.times[n - 1];
            const auto w = P_.weights(f.times[n - 1], f.times[n]);
            const Spectrum f1 = tr_.forward(f.fields[n]);
            for (std::size_t i = 0; i < uh.size(); ++i) {
                cplx E = -lambda * h;
                for (std::size_t k = 0; k < w.size(); ++k) E += w[k] * parts_[i][k];
                uh[i] = std::exp(E) * uh[i] + h * (phi1(E) * f0[i] + phi2(E) * (f1[i] - f0[i]));
            }
            u.fields.push_back(tr_.inverse(uh));
            f0 = f1;
        }
        return u;
    }

    /// L^{m,ν}(t) as the propagator's own multiplier.
    Field generator(const Field& v, double t) const {
        const auto w = P_.rates(t);
        Spectrum s = tr_.forward(v);
        for (std::size_t i = 0; i < s.size(); ++i) {
            cplx m = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k) m += w[k] * parts_[i][k];
            s[i] *= m;
        }
        return tr_.inverse(s);
    }

private:
    SpectralGrid grid_;
    Propagator P_;
    Transform tr_;
    std::vector<std::vector<cplx>> parts_;
};

Field combine(const Field& a, double ca, const Field& b, double cb) {
    Field r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ca * a[i] + cb * b[i];
    return r;
}

double hnorm(const Trajectory& u, const Spectrum& gen, double p) {
    Trajectory Lu{u.grid, u.times, {}};
    for (const auto& v : u.fields) Lu.fields.push_back(apply_multiplier(u.grid, v, gen));
    return spacetime_norm(u, p) + spacetime_norm(Lu, p);
}

Trajectory forcing_trace(const Trajectory& u, const NonlocalOperator& L, double lambda, const Trajectory& f) {
    Trajectory F{u.grid, u.times, {}};
    for (std::size_t i = 0; i < u.times.size(); ++i) {
        Field v = L.apply(u.fields[i], u.times[i]);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += -lambda * u.fields[i][k] + f.fields[i][k];
        F.fields.push_back(std::move(v));
    }
    return F;
}

}  // namespace

namespace {
double residual_with(const Trajectory& u, const NonlocalOperator& L, double lambda, const Trajectory& f);
}

Trajectory sample_forcing(const SpectralGrid& grid, double T, int n_t,
                          const std::function<double(double, const Vec&)>& f) {
    if (!(T > 0.0) || n_t < 1) throw DomainError("forcing needs T > 0 and at least one time step");
    Trajectory tr{grid, {}, {}};
    for (int i = 0; i <= n_t; ++i) {
        const double t = T * i / n_t;
        Field v(grid.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(t, grid.point(k));
        tr.times.push_back(t);
        tr.fields.push_back(std::move(v));
    }
    return tr;
}

NonlocalOperator::NonlocalOperator(const MeasureSpec& spec, const CoefficientSpec& coeff, const SpectralGrid& grid)
    : grid_(grid), coeff_(coeff) {
    if (grid.dim != spec.dim()) throw DomainError("grid and measure dimensions differ");
    const PolarMeasure base = polar(spec);
    for (const auto& term : coeff.terms()) {
        mult_.push_back(term_multiplier(weighted_polar(base, term), grid, nodes_));
        Field xf(grid.size());
        for (std::size_t i = 0; i < xf.size(); ++i) xf[i] = term.x.at(grid.point(i));
        xfac_.push_back(std::move(xf));
    }
}

NonlocalOperator::~NonlocalOperator() = default;

Field NonlocalOperator::apply(const Field& field, double t) const {
    if (field.size() != grid_.size()) throw DomainError("field does not match the grid");
    Transform tr(grid_);
    const Spectrum fh = tr.forward(field);
    Field out(field.size(), 0.0);
    for (std::size_t k = 0; k < mult_.size(); ++k) {
        Spectrum s(fh.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = mult_[k][i] * fh[i];
        const Field g = tr.inverse(s);
        const double mt = coeff_.terms()[k].t(t);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += mt * xfac_[k][i] * g[i];
    }
    return out;
}

Field apply_nonlocal(const MeasureSpec& spec, const CoefficientSpec& coeff, const Field& field, double t,
                     const SpectralGrid& grid) {
    return NonlocalOperator(spec, coeff, grid).apply(field, t);
}

SolveResult solve_duhamel(const MeasureSpec& spec, const CoefficientSpec& coeff, double lambda, const Trajectory& f,
                          double p) {
    if (coeff.x_dependent())
        throw DomainError("coefficient depends on x: use the frozen-coefficient iteration");
    if (!(lambda >= 0.0)) throw DomainError("lambda must be non-negative");
    check_forcing(f);
    const DuhamelStepper stepper(spec, coeff, f.grid);
    SolveResult r;
    r.u = stepper.solve(lambda, f);
    const NonlocalOperator L(spec, coeff, f.grid);
    r.forcing_trace = forcing_trace(r.u, L, lambda, f);
    r.diag = estimate_constants(r, spec, f, lambda, p);
    r.diag.iterations = {1};
    r.diag.residual = residual_with(r.u, L, lambda, f);
    return r;
}

SolveResult solve_frozen_iteration(const MeasureSpec& spec, const CoefficientSpec& coeff, double lambda,
                                   const Trajectory& f, const FrozenOptions& opt) {
    if (!(lambda >= 0.0)) throw DomainError("lambda must be non-negative");
    if (opt.homotopy < 1 || opt.max_iter < 1 || !(opt.tol > 0.0))
        throw DomainError("frozen iteration needs homotopy >= 1, max_iter >= 1 and tol > 0");
    check_forcing(f);
    if (!coeff.x_dependent()) {
        // m̄ = m: the correction vanishes and one solve is the answer
        SolveResult r = solve_duhamel(spec, coeff, lambda, f, opt.p);
        r.diag.iterations = {1};
        return r;
    }
    const SpectralGrid& grid = f.grid;
    std::vector<double> avg;
    for (const auto& term : coeff.terms()) {
        double s = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) s += term.x.at(grid.point(i));
        avg.push_back(s / grid.size());
    }
    const CoefficientSpec mbar = coeff.with_x_constants(avg);
    const DuhamelStepper stepper(spec, mbar, grid);
    const NonlocalOperator Lm(spec, coeff, grid);
    const Spectrum gen = sample_symbol(grid, [ev = SymbolEvaluator(polar(spec), grid.xi_min(), grid.xi_max())](
                                                 const Vec& xi) { return ev(xi); });

    std::vector<int> counts;
    Trajectory u{grid, f.times, std::vector<Field>(f.times.size(), Field(grid.size(), 0.0))};
    for (int level = 1; level <= opt.homotopy; ++level) {
        const double tau = double(level) / opt.homotopy;
        std::vector<double> diffs;
        int it = 0;
        for (;;) {
            ++it;
            Trajectory g{grid, f.times, {}};
            for (std::size_t i = 0; i < f.times.size(); ++i) {
                const double t = f.times[i];
                const Field a = Lm.apply(u.fields[i], t);
                const Field b = apply_multiplier(grid, u.fields[i], gen);
                const Field c = stepper.generator(u.fields[i], t);
                Field v = f.fields[i];
                for (std::size_t k = 0; k < v.size(); ++k) v[k] += tau * a[k] + (1.0 - tau) * b[k] - c[k];
                g.fields.push_back(std::move(v));
            }
            Trajectory next = stepper.solve(lambda, g);
            Trajectory delta{grid, f.times, {}};
            for (std::size_t i = 0; i < f.times.size(); ++i)
                delta.fields.push_back(combine(next.fields[i], 1.0, u.fields[i], -1.0));
            const double scale = std::max(hnorm(next, gen, opt.p), 1e-300);
            const double d = hnorm(delta, gen, opt.p) / scale;
            u = std::move(next);
            diffs.push_back(d);
            if (d < opt.tol) break;
            if (diffs.size() >= 6) {
                bool growing = true;
                for (std::size_t j = diffs.size() - 5; j < diffs.size(); ++j) growing = growing && diffs[j] > diffs[j - 1];
                if (growing)
                    throw NumericError("frozen iteration diverges at tau = " + std::to_string(tau) +
                                           ": increase lambda or the homotopy steps",
                                       d);
            }
            if (it >= opt.max_iter) {
                std::string trace;
                for (double x : diffs) trace += " " + std::to_string(x);
                throw NumericError("frozen iteration did not reach tol in " + std::to_string(opt.max_iter) +
                                       " iterations; trace:" + trace,
                                   d);
            }
        }
        counts.push_back(it);
    }
    SolveResult r;
    r.u = std::move(u);
    r.forcing_trace = forcing_trace(r.u, Lm, lambda, f);
    r.diag = estimate_constants(r, spec, f, lambda, opt.p);
    r.diag.iterations = counts;
    r.diag.residual = residual_with(r.u, Lm, lambda, f);
    r.diag.p_above_d_over_beta = opt.p > spec.dim() / coeff.beta();
    return r;
}

namespace {

double residual_with(const Trajectory& u, const NonlocalOperator& L, double lambda, const Trajectory& f) {
    if (u.times != f.times || !(u.grid == f.grid)) throw DomainError("solution and forcing use different nodes");
    const Trajectory F = forcing_trace(u, L, lambda, f);
    const std::size_t nt = u.times.size(), N = u.grid.size();
    // cumulative ∫₀^t F at every grid point
    std::vector<double> g(nt), acc(nt);
    std::vector<Field> integral(nt, Field(N));
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t i = 0; i < nt; ++i) g[i] = F.fields[i][k];
        numeric::cumulative_cubic(u.times.data(), g.data(), static_cast<int>(nt), acc.data());
        for (std::size_t i = 0; i < nt; ++i) integral[i][k] = acc[i];
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < nt; ++i)
        worst = std::max(worst, lp_norm(u.grid, combine(u.fields[i], 1.0, integral[i], -1.0), 2.0));
    const double scale = spacetime_norm(u, 2.0) + spacetime_norm(f, 2.0);
    return scale > 0.0 ? worst / scale : worst;
}

}  // namespace

double residual(const SolveResult& result, const MeasureSpec& spec, const CoefficientSpec& coeff, double lambda,
                const Trajectory& f) {
    return residual_with(result.u, NonlocalOperator(spec, coeff, f.grid), lambda, f);
}

SolveDiagnostics estimate_constants(const SolveResult& result, const MeasureSpec& spec, const Trajectory& f,
                                    double lambda, double p) {
    SolveDiagnostics d;
    d.p = p;
    d.lambda = lambda;
    d.T = f.times.back() - f.times.front();
    d.rho_lambda = lambda > 0.0 ? std::min(d.T, 1.0 / lambda) : d.T;
    const SpectralGrid& grid = result.u.grid;
    SymbolEvaluator ev(polar(spec), grid.xi_min(), grid.xi_max());
    const Spectrum gen = sample_symbol(grid, [&](const Vec& xi) { return ev(xi); });
    Trajectory Lu{grid, result.u.times, {}};
    for (const auto& v : result.u.fields) Lu.fields.push_back(apply_multiplier(grid, v, gen));
    d.u_norm = spacetime_norm(result.u, p);
    d.Lu_norm = spacetime_norm(Lu, p);
    d.dtu_norm = result.forcing_trace.fields.empty() ? 0.0 : spacetime_norm(result.forcing_trace, p);
    d.f_norm = spacetime_norm(f, p);
    if (d.f_norm == 0.0) {
        d.zero_solution = d.u_norm == 0.0;
        return d;
    }
    d.N_main = (d.dtu_norm + d.Lu_norm) / d.f_norm;
    d.N_zero = d.u_norm / (d.rho_lambda * d.f_norm);
    return d;
}

}  // namespace levy
