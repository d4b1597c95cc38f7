#include <doctest.h>

#include "levy/density.hpp"
#include "levy/error.hpp"
#include "levy/solver.hpp"

#include <cmath>
#include <numbers>

using namespace levy;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const auto cauchy = MeasureSpec::radial_stable(1, 1.0, 1.0);
const auto one = CoefficientSpec::constant(1.0);

double gauss(const Vec& x) { return std::exp(-x[0] * x[0]); }

double rel_l2(const SpectralGrid& g, const Field& a, const Field& b) {
    Field d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return lp_norm(g, d, 2.0) / lp_norm(g, b, 2.0);
}

// 1 + 0.1·cos(2πx/L)
CoefficientSpec oscillating(double L) {
    CoefficientTerm term;
    term.x = Harmonic{1.0, 0.1, {1.0 / L, 0.0}, 0.0};
    return CoefficientSpec::expression({term});
}
}  // namespace

TEST_CASE("nonlocal quadrature agrees with the multiplier path") {
    const auto g = SpectralGrid::make(1, 256, 8.0);
    Field f(g.size()), flat(g.size(), 3.0);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = gauss(g.point(i));
    CHECK(rel_l2(g, apply_nonlocal(cauchy, one, f, 0.0, g), apply_generator(cauchy, g, f)) < 1e-6);
    for (double v : apply_nonlocal(cauchy, one, flat, 0.0, g)) CHECK(std::abs(v) < 1e-12);

    // non power-law radial part and an asymmetric order-1.5 measure
    auto lg = MeasureSpec::radial_angular(1, RadialProfile::power_log(1.0, -1.5, -0.25), {}, {}, 0.75);
    CHECK(rel_l2(g, apply_nonlocal(lg, one, f, 0.0, g), apply_generator(lg, g, f)) < 1e-6);
    SphereMeasure S;
    S.uniform = false;
    S.atoms = {{0.0, 1.0}, {kPi, 0.4}};
    auto asym = MeasureSpec::radial_angular(1, RadialProfile::power(1.0, -2.5), {}, S, 1.5);
    CHECK(rel_l2(g, apply_nonlocal(asym, one, f, 0.0, g), apply_generator(asym, g, f)) < 1e-6);

    // m₁(x)m₂(y) factorizes outside the y-integral
    CoefficientTerm term;
    term.x = Harmonic{1.0, 0.3, {1.0 / 16.0, 0.0}, 0.2};
    term.r = Harmonic{1.0, 0.25, {1.0, 0.0}, 0.0};
    const auto m = CoefficientSpec::expression({term});
    CoefficientTerm yonly = term;
    yonly.x = Harmonic{};
    const Field full = apply_nonlocal(cauchy, m, f, 0.0, g);
    const Field part = apply_nonlocal(cauchy, CoefficientSpec::expression({yonly}), f, 0.0, g);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(full[i] == Approx(term.x.at(g.point(i)) * part[i]).epsilon(1e-12));
}

TEST_CASE("nonlocal quadrature in two dimensions") {
    const auto g = SpectralGrid::make(2, 64, 8.0);
    Field f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec x = g.point(i);
        f[i] = std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1]);
    }
    const auto iso = MeasureSpec::radial_stable(2, 1.3, 1.0);
    CHECK(rel_l2(g, apply_nonlocal(iso, one, f, 0.0, g), apply_generator(iso, g, f)) < 1e-6);
    const auto an = MeasureSpec::anisotropic(2, 1.0, {1.0, 0.5});
    CHECK(rel_l2(g, apply_nonlocal(an, one, f, 0.0, g), apply_generator(an, g, f)) < 1e-6);
}

TEST_CASE("duhamel: flat forcing is a scalar ode") {
    const auto g = SpectralGrid::make(1, 64, 8.0);
    const auto f = sample_forcing(g, 1.0, 100, [](double, const Vec&) { return 1.0; });
    const auto r = solve_duhamel(cauchy, one, 2.0, f);
    double err = 0.0;
    for (std::size_t i = 0; i < r.u.times.size(); ++i)
        for (double v : r.u.fields[i]) err = std::max(err, std::abs(v - (1.0 - std::exp(-2.0 * r.u.times[i])) / 2.0));
    CHECK(err < 1e-8);
    CHECK(r.diag.residual < 1e-8);
    for (double v : r.u.fields[0]) CHECK(v == 0.0);
    CHECK_THROWS_AS(solve_duhamel(cauchy, one, -1.0, f), DomainError);
    CHECK_THROWS_AS(solve_duhamel(cauchy, oscillating(8.0), 1.0, f), DomainError);
}

TEST_CASE("duhamel: manufactured solution and the zero-order bound") {
    const auto g = SpectralGrid::make(1, 256, 8.0);
    Field gf(g.size());
    for (std::size_t i = 0; i < gf.size(); ++i) gf[i] = gauss(g.point(i));
    const Field Lg = apply_generator(cauchy, g, gf);
    for (double lambda : {0.0, 1.0, 10.0, 100.0}) {
        Trajectory f{g, {}, {}};
        for (int i = 0; i <= 50; ++i) {
            const double t = i / 50.0;
            Field v(g.size());
            for (std::size_t k = 0; k < v.size(); ++k) v[k] = gf[k] - t * Lg[k] + lambda * t * gf[k];
            f.times.push_back(t);
            f.fields.push_back(v);
        }
        const auto r = solve_duhamel(cauchy, one, lambda, f);
        // u*(1) = g
        CHECK(rel_l2(g, r.u.fields.back(), gf) < 1e-3);
        CHECK(r.diag.u_norm <= r.diag.rho_lambda * r.diag.f_norm * (1.0 + 1e-6));
    }
}

TEST_CASE("duhamel: linearity, causality and time-step order") {
    const auto g = SpectralGrid::make(1, 128, 8.0);
    auto f1 = sample_forcing(g, 1.0, 40, [](double t, const Vec& x) { return std::sin(3.0 * t) * std::exp(-x[0] * x[0]); });
    auto f2 = sample_forcing(g, 1.0, 40, [](double t, const Vec& x) { return t * std::cos(x[0]) / (1.0 + x[0] * x[0]); });
    Trajectory sum = f1;
    for (std::size_t i = 0; i < sum.fields.size(); ++i)
        for (std::size_t k = 0; k < g.size(); ++k) sum.fields[i][k] += f2.fields[i][k];
    const auto a = solve_duhamel(cauchy, one, 1.0, f1), b = solve_duhamel(cauchy, one, 1.0, f2),
               c = solve_duhamel(cauchy, one, 1.0, sum);
    double lin = 0.0;
    for (std::size_t i = 0; i < c.u.fields.size(); ++i)
        for (std::size_t k = 0; k < g.size(); ++k)
            lin = std::max(lin, std::abs(c.u.fields[i][k] - a.u.fields[i][k] - b.u.fields[i][k]));
    CHECK(lin < 1e-10);

    Trajectory cut = f1;
    for (std::size_t i = 21; i < cut.fields.size(); ++i) cut.fields[i].assign(g.size(), 0.0);
    const auto d = solve_duhamel(cauchy, one, 1.0, cut);
    double causal = 0.0;
    for (std::size_t i = 0; i <= 20; ++i)
        for (std::size_t k = 0; k < g.size(); ++k) causal = std::max(causal, std::abs(d.u.fields[i][k] - a.u.fields[i][k]));
    CHECK(causal < 1e-12);

    auto osc = [](double t, const Vec& x) { return std::sin(12.0 * t) * std::exp(-x[0] * x[0]); };
    const double r1 = solve_duhamel(cauchy, one, 1.0, sample_forcing(g, 1.0, 10, osc)).diag.residual;
    const double r2 = solve_duhamel(cauchy, one, 1.0, sample_forcing(g, 1.0, 20, osc)).diag.residual;
    CHECK(r1 / r2 >= 1.8);

    SolveResult bad = a;
    bad.u.fields[0].assign(g.size(), 0.5);
    CHECK(residual(bad, cauchy, one, 1.0, f1) > 0.1);
}

TEST_CASE("frozen iteration") {
    const auto g = SpectralGrid::make(1, 128, 8.0);
    const auto f = sample_forcing(g, 1.0, 160, [](double t, const Vec& x) { return (1.0 + t) * std::exp(-x[0] * x[0]); });
    // x-independent: one iteration reproduces the Duhamel answer
    const auto a = solve_frozen_iteration(cauchy, one, 10.0, f);
    const auto b = solve_duhamel(cauchy, one, 10.0, f);
    CHECK(a.diag.iterations == std::vector<int>{1});
    double diff = 0.0;
    for (std::size_t i = 0; i < a.u.fields.size(); ++i)
        for (std::size_t k = 0; k < g.size(); ++k) diff = std::max(diff, std::abs(a.u.fields[i][k] - b.u.fields[i][k]));
    CHECK(diff < 1e-12);

    const auto m = oscillating(g.L);
    const auto r = solve_frozen_iteration(cauchy, m, 10.0, f);
    CHECK(r.diag.residual < 1e-6);
    CHECK(r.diag.iterations.size() == 4);

    // manufactured u* = t·g with the full coefficient
    Field gf(g.size());
    for (std::size_t i = 0; i < gf.size(); ++i) gf[i] = gauss(g.point(i));
    const NonlocalOperator L(cauchy, m, g);
    const Field Lg = L.apply(gf, 0.0);
    Trajectory fm{g, {}, {}};
    for (int i = 0; i <= 40; ++i) {
        const double t = i / 40.0;
        Field v(g.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = gf[k] - t * Lg[k] + 10.0 * t * gf[k];
        fm.times.push_back(t);
        fm.fields.push_back(v);
    }
    FrozenOptions opt;
    opt.max_iter = 20;
    const auto rm = solve_frozen_iteration(cauchy, m, 10.0, fm, opt);
    CHECK(rel_l2(g, rm.u.fields.back(), gf) < 1e-3);
    for (int n : rm.diag.iterations) CHECK(n <= 20);
}

TEST_CASE("frozen iteration reports divergence") {
    const auto g = SpectralGrid::make(1, 64, 8.0);
    const auto f = sample_forcing(g, 1.0, 10, [](double, const Vec& x) { return std::exp(-x[0] * x[0]); });
    // 95% oscillation with one level and three iterations cannot reach 1e-14
    CoefficientTerm term;
    term.x = Harmonic{1.0, 0.95, {1.0 / 8.0, 0.0}, 0.0};
    FrozenOptions opt;
    opt.homotopy = 1;
    opt.max_iter = 3;
    opt.tol = 1e-14;
    CHECK_THROWS_AS(solve_frozen_iteration(cauchy, CoefficientSpec::expression({term}), 0.0, f, opt), NumericError);
}

TEST_CASE("constants scale with rho_lambda") {
    const auto g = SpectralGrid::make(1, 128, 8.0);
    const auto f = sample_forcing(g, 1.0, 40, [](double t, const Vec& x) { return (1.0 + t) * std::exp(-x[0] * x[0]); });
    std::vector<double> ratios;
    for (double lambda : {10.0, 100.0}) {
        const auto r = solve_duhamel(cauchy, one, lambda, f);
        ratios.push_back(r.diag.u_norm / r.diag.f_norm);
        CHECK(std::isfinite(r.diag.N_main));
    }
    const double slope = std::log(ratios[1] / ratios[0]) / std::log(10.0);
    CHECK(slope == Approx(-1.0).epsilon(0.1));
    const auto zero = solve_duhamel(cauchy, one, 1.0, sample_forcing(g, 1.0, 4, [](double, const Vec&) { return 0.0; }));
    CHECK(zero.diag.zero_solution);
    CHECK(zero.diag.N_main == 0.0);
}
