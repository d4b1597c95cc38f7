#include <doctest.h>

#include "levy/density.hpp"
#include "levy/error.hpp"

#include <cmath>
#include <numbers>

using namespace levy;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

double cauchy(double t, double x) { return t / (kPi * kPi * t * t + x * x); }

const auto one = CoefficientSpec::constant(1.0);
}  // namespace

TEST_CASE("cauchy transition density matches the closed form") {
    const auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    const auto g = SpectralGrid::make(1, 1024, 64.0);
    const auto d = transition_density(s, one, 0.0, 1.0, g);
    CHECK(d.values[g.n / 2] == Approx(1.0 / (kPi * kPi)).epsilon(1e-3));
    double worst = 0.0;
    for (std::size_t i = 0; i < d.values.size(); ++i) worst = std::max(worst, std::abs(d.values[i] - cauchy(1.0, g.point(i)[0])));
    // the periodic sum of the tails is the only error left
    CHECK(worst < 1e-3);
    CHECK(d.mass_defect < 1e-4);
    CHECK(d.imag_residue < 1e-12);
    CHECK(d.tail_estimate > 0.0);
    for (int i = 1; i < g.n / 2; ++i) CHECK(d.values[g.n / 2 + i] == Approx(d.values[g.n / 2 - i]).epsilon(1e-10));
}

TEST_CASE("transition density rejects narrow boxes") {
    const auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    CHECK_THROWS_AS(transition_density(s, one, 0.0, 1.0, SpectralGrid::make(1, 256, 4.0)), GridTooSmallError);
    // too coarse: the transform is still large at the lattice edge
    CHECK_THROWS_AS(transition_density(s, one, 0.0, 0.01, SpectralGrid::make(1, 64, 64.0)), GridTooSmallError);
    CHECK_THROWS_AS(transition_density(s, one, 1.0, 1.0, SpectralGrid::make(1, 256, 64.0)), DomainError);
}

TEST_CASE("scaling identity") {
    const auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    const auto r = check_scaling_identity(s, one, 0.0, 0.5, SpectralGrid::make(1, 1024, 64.0));
    CHECK(r.discrepancy < 1e-6);
    // a(t − s) = 1 means nothing is rescaled
    const double tau = w_profile(s)(1.0);
    const auto r1 = check_scaling_identity(s, one, 0.0, tau, SpectralGrid::make(1, 1024, 64.0));
    CHECK(r1.R == Approx(1.0).epsilon(1e-12));
    CHECK(r1.discrepancy < 1e-12);

    const auto an = MeasureSpec::anisotropic(2, 1.0, {1.0, 0.5});
    const auto r2 = check_scaling_identity(an, one, 0.0, 1.0, SpectralGrid::make(2, 256, 32.0));
    CHECK(r2.discrepancy < 1e-3);
}

TEST_CASE("anisotropic density is a product of cauchy laws") {
    const auto an = MeasureSpec::anisotropic(2, 1.0, {1.0, 0.5});
    const auto g = SpectralGrid::make(2, 256, 32.0);
    const auto d = transition_density(an, one, 0.0, 1.0, g);
    // symbol −2π²(c₁|ξ₁| + c₂|ξ₂|): time c_i per axis
    const std::size_t c = (g.n / 2) * g.n + g.n / 2;
    CHECK(d.values[c] == Approx(cauchy(1.0, 0.0) * cauchy(0.5, 0.0)).epsilon(2e-2));
    CHECK(d.mass_defect < 1e-4);
}

TEST_CASE("generator on cosines and constants") {
    const auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    const auto g = SpectralGrid::make(1, 256, 8.0);
    const double xi0 = 3.0 / 16.0;
    Field f(g.size()), c(g.size(), 2.5);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::cos(2.0 * kPi * xi0 * g.point(i)[0]);
    const Field Lf = apply_generator(s, g, f);
    double err = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(Lf[i] + 2.0 * kPi * kPi * xi0 * f[i]));
    CHECK(err < 1e-9);
    for (double v : apply_generator(s, g, c)) CHECK(std::abs(v) < 1e-12);

    Field bump(g.size());
    for (std::size_t i = 0; i < bump.size(); ++i) bump[i] = std::exp(-g.point(i)[0] * g.point(i)[0]);
    const Field twice = apply_generator(s, g, apply_generator(s, g, bump));
    SymbolEvaluator ev(polar(s), g.xi_min(), g.xi_max());
    Spectrum sq = sample_symbol(g, [&](const Vec& xi) { return ev(xi) * ev(xi); });
    const Field once = apply_multiplier(g, bump, sq);
    double e2 = 0.0;
    for (std::size_t i = 0; i < once.size(); ++i) e2 = std::max(e2, std::abs(once[i] - twice[i]));
    CHECK(e2 < 1e-10);
}

TEST_CASE("weighted generator norm is scale free for stable laws") {
    const auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    const auto g = SpectralGrid::make(1, 1024, 64.0);
    double lo = 1e300, hi = 0.0;
    for (int k = -6; k <= 0; ++k) {
        const double v = weighted_generator_l1(s, s, one, 0.0, std::ldexp(1.0, k), 0.5, 0, g);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK((hi - lo) / lo < 0.1);
    const double v0 = weighted_generator_l1(s, s, one, 0.0, 1.0, 0.5, 0, g);
    const double v3 = weighted_generator_l1(scale(s, 3.0, 1.0), s, one, 0.0, 1.0, 0.5, 0, g);
    CHECK(v3 == Approx(3.0 * v0).epsilon(1e-12));
    const double d1 = weighted_generator_l1(s, s, one, 0.0, 1.0, 0.5, 1, g);
    CHECK(std::isfinite(d1));
    CHECK(d1 > 0.0);
}

TEST_CASE("hormander integrals are finite and refine stably") {
    const auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    HormanderParams hp;
    const auto a = hormander_suite(s, one, s, hp, SpectralGrid::make(1, 256, 32.0));
    const auto b = hormander_suite(s, one, s, hp, SpectralGrid::make(1, 512, 64.0));
    for (double v : {a.ratio_i, a.ratio_ii, a.ratio_iii}) {
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
    }
    CHECK(a.lhs_iii_equal == 0.0);
    CHECK(b.ratio_i == Approx(a.ratio_i).epsilon(0.05));
    CHECK(b.ratio_ii == Approx(a.ratio_ii).epsilon(0.05));
    CHECK(b.ratio_iii == Approx(a.ratio_iii).epsilon(0.05));
    // small shifts: the left side of part (ii) is linear in h
    CHECK(a.lhs_ii[1] / a.lhs_ii[0] == Approx(10.0).epsilon(0.05));
}

TEST_CASE("radial density against the cauchy law") {
    const auto s1 = MeasureSpec::radial_stable(1, 1.0, 1.0);
    for (double r : {0.0, 0.3, 2.0, 10.0}) CHECK(radial_density(s1, 1.0, r) == Approx(cauchy(1.0, r)).epsilon(1e-6));
    // d = 2 isotropic Cauchy: p(t,x) = c_d t/(t² + |x|²)^{3/2} with symbol −2π|ξ|·t' scaling
    const auto s2 = MeasureSpec::radial_stable(2, 1.0, 1.0);
    const double k = -psi(s2, {1.0, 0.0}).re / (2.0 * kPi);  // ψ = −2πk|ξ|
    for (double r : {0.0, 0.5, 3.0}) {
        const double p = k / (2.0 * kPi * std::pow(k * k + r * r, 1.5));
        CHECK(radial_density(s2, 1.0, r) == Approx(p).epsilon(1e-5));
    }
}

TEST_CASE("tail envelope and fitted constant") {
    const auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    const auto u = unimodal_data(s);
    CHECK(u.gamma(2.0) == Approx(2.0));
    // the two branches meet at t = a₁γ(|x|) up to the factor e^{−b₁a₁}
    const double a1 = 1.0, b1 = 1.0, x = 3.0;
    const double t0 = a1 * u.gamma(x);
    const double left = tail_envelope(s, t0, x, a1, b1), right = tail_envelope(s, t0 * (1 + 1e-9), x, a1, b1);
    CHECK(std::max(left, right) / std::min(left, right) <= 8.0);
    const std::vector<double> ts{0.01, 0.1, 1.0, 10.0}, xs{0.1, 1.0, 10.0, 100.0};
    const auto f = fit_envelope(s, ts, xs, a1, b1);
    CHECK(std::isfinite(f.c1));
    const auto f2 = fit_envelope(s, {0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0}, {0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0}, a1, b1);
    CHECK(f2.c1 < 2.0 * f.c1);
    CHECK_THROWS_AS(unimodal_data(MeasureSpec::anisotropic(2, 1.0, {1.0, 1.0})), DomainError);
}

TEST_CASE("difference kernel") {
    const auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    const auto g = SpectralGrid::make(1, 1024, 64.0);
    const auto k = difference_kernel(s, 0.5, {1.0, 0.0}, g);
    const auto km = difference_kernel(s, 0.5, {-1.0, 0.0}, g);
    // reflecting z reflects the kernel
    double err = 0.0;
    for (int i = 1; i < g.n; ++i) err = std::max(err, std::abs(k.kernel[i] - km.kernel[g.n - i]));
    CHECK(err < 1e-8);
    CHECK(std::isfinite(k.ratio));
    CHECK_THROWS_AS(difference_kernel(s, 1.5, {1.0, 0.0}, g), DomainError);

    Field u(g.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::exp(-0.5 * std::pow(g.point(i)[0], 2));
    const auto rec = check_difference_reconstruction(s, 0.5, {1.0, 0.0}, g, u);
    CHECK(rec.rel_error < 1e-2);
    CHECK(rec.c == Approx(-1.0 / std::tgamma(0.5)).epsilon(1e-2));
}

TEST_CASE("chapman kolmogorov and the green ratio") {
    const auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    CHECK(chapman_kolmogorov(s, one, 0.4, 1.0, SpectralGrid::make(1, 1024, 64.0)) < 1e-3);
    const auto s2 = MeasureSpec::radial_stable(2, 1.0, 1.0);
    const auto gr = green_ratio(s2, {0.5, 1.0, 4.0});
    CHECK(std::isfinite(gr.sup));
    // stable scaling makes the ratio independent of the radius
    CHECK(gr.ratios[0] == Approx(gr.ratios[2]).epsilon(1e-2));
}
