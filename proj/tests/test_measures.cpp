#include <doctest.h>

#include "levy/error.hpp"
#include "levy/measures.hpp"
#include "levy/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace levy;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

MeasureSpec log_angular_1d() {
    // j(r) = r^{-1.5} ln(1+r)^{-0.25}: not a pure power, exercises the quadrature paths
    return MeasureSpec::radial_angular(1, RadialProfile::power_log(1.0, -1.5, -0.25), {}, {},
                                       0.75);
}

MeasureSpec unimodal_2d() {
    return MeasureSpec::isotropic_unimodal(2, RadialProfile::power_log(1.0, 0.5, 0.25), 1.0, 2.0,
                                           0.75);
}
}  // namespace

TEST_CASE("tail mass closed forms") {
    auto s = MeasureSpec::radial_stable(1, 0.5, 1.0);
    CHECK(tail_mass(s, 4.0) == Approx(2.0).epsilon(1e-14));
    auto a = MeasureSpec::anisotropic(2, 1.0, {1.0, 1.0});
    CHECK(tail_mass(a, 2.0) == Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(tail_mass(s, 0.0), DomainError);
}

TEST_CASE("tail mass quadrature agrees with direct integration") {
    // direct oracle: 2∫_r^∞ y^{-3/2} dy = 4 r^{-1/2}
    auto ra = MeasureSpec::radial_angular(1, RadialProfile::power_log(1.0, -1.5, 0.0), {}, {}, 0.5);
    CHECK(tail_mass(ra, 4.0) == Approx(2.0).epsilon(1e-10));
    auto lg = log_angular_1d();
    double prev = tail_mass(lg, 0.01);
    for (double r : {0.1, 1.0, 10.0, 100.0}) {
        const double t = tail_mass(lg, r);
        CHECK(t < prev);
        prev = t;
    }
    CHECK(tail_mass(lg, 1e12) < 1e-5);
}

TEST_CASE("anisotropic closed form matches quadrature of the axis densities") {
    auto a = MeasureSpec::anisotropic(2, 1.0, {1.0, 3.0});
    auto q = numeric::integrate_to_infinity([](double y) { return 1.0 / (y * y); }, 2.5);
    CHECK(tail_mass(a, 2.5) == Approx(2.0 * 4.0 * q.value).epsilon(1e-8));
}

TEST_CASE("w profile") {
    auto a = MeasureSpec::anisotropic(2, 1.0, {1.0, 1.0});
    CHECK(w_profile(a)(8.0) == Approx(2.0).epsilon(1e-14));
    auto s = MeasureSpec::radial_stable(1, 0.5, 1.0);
    CHECK(w_profile(s)(4.0) == Approx(0.5).epsilon(1e-14));
    auto w = w_profile(unimodal_2d());
    double prev = 0.0;
    for (double r = 1e-3; r < 1e3; r *= 3.0) {
        CHECK(w(r) >= prev);
        prev = w(r);
    }
}

TEST_CASE("rescale normalizes the unit tail for every family") {
    std::vector<MeasureSpec> specs = {MeasureSpec::radial_stable(1, 0.5, 1.0),
                                      MeasureSpec::anisotropic(2, 1.0, {1.0, 2.0}),
                                      log_angular_1d(), unimodal_2d()};
    for (const auto& s : specs)
        for (int j = -10; j <= 10; j += 5)
            CHECK(std::abs(tail_mass(rescale(s, std::ldexp(1.0, j)), 1.0) - 1.0) < 1e-10);
}

TEST_CASE("rescaled stable measure is scale free") {
    auto s = rescale(MeasureSpec::radial_stable(1, 0.5, 1.0), 16.0);
    const auto& f = std::get<RadialStable>(s.family());
    CHECK(f.c == Approx(0.25).epsilon(1e-15));
    CHECK(rescale(s, 1.0) == s);
    auto u = rescale(unimodal_2d(), 8.0);
    CHECK(tail_mass(rescale(u, 1.0), 3.0) == Approx(tail_mass(u, 3.0)).epsilon(1e-10));
}

TEST_CASE("truncated moments") {
    auto s = MeasureSpec::radial_stable(1, 0.5, 1.0);
    for (double R : {std::ldexp(1.0, -8), 1.0, std::ldexp(1.0, 8)}) {
        auto m = truncated_moments(s, 1.0, 0.25, R);
        CHECK(m.small_moment == Approx(1.0).epsilon(1e-9));
        CHECK(m.large_moment == Approx(2.0).epsilon(1e-9));
    }
    // per-axis closed forms: rescaled c_i = 1/4, 2·¼·(1/(α₁−α) + 1/(α−α₂)) per axis
    auto a = MeasureSpec::anisotropic(2, 1.0, {1.0, 1.0});
    for (double R : {0.01, 1.0, 100.0}) {
        auto m = truncated_moments(a, 1.5, 0.5, R);
        CHECK(m.small_moment == Approx(4 * 0.25 * 2.0).epsilon(1e-9));
        CHECK(m.large_moment == Approx(4 * 0.25 * 2.0).epsilon(1e-9));
    }
    try {
        truncated_moments(s, 0.25, 0.25, 1.0);
        FAIL("expected divergence");
    } catch (const MomentDivergenceError& e) {
        CHECK(e.side() == "small");
    }
    try {
        truncated_moments(s, 1.0, 0.75, 1.0);
        FAIL("expected divergence");
    } catch (const MomentDivergenceError& e) {
        CHECK(e.side() == "large");
    }
}

TEST_CASE("nondegeneracy") {
    std::vector<double> Rs = {0.01, 1.0, 100.0};
    auto a = MeasureSpec::anisotropic(2, 1.0, {1.0, 1.0});
    CHECK(nondegeneracy(a, Rs, 8).value == Approx(0.5).epsilon(1e-12));
    auto s = MeasureSpec::radial_stable(2, 1.0, 1.0);
    CHECK(nondegeneracy(s, Rs, 16).value == Approx(0.5).epsilon(1e-10));
    SphereMeasure axis;
    axis.uniform = false;
    axis.atoms = {{0.0, 1.0}, {kPi, 1.0}};
    auto line = MeasureSpec::radial_angular(2, RadialProfile::power(1.0, -3.0), {}, axis, 1.0);
    auto rep = nondegeneracy(line, Rs, 4);
    CHECK(rep.degenerate);
    CHECK(rep.value == 0.0);
    CHECK(rep.witness_angle == Approx(kPi / 2));
    CHECK_THROWS_AS(nondegeneracy(a, Rs, 2), DomainError);
}

TEST_CASE("symmetrize and reflect") {
    auto s = MeasureSpec::radial_stable(2, 1.2, 1.0);
    CHECK(symmetrize(s) == s);
    CHECK(reflect(s) == s);
    SphereMeasure one;
    one.uniform = false;
    one.atoms = {{0.0, 1.0}};
    auto half = MeasureSpec::radial_angular(1, RadialProfile::power(1.0, -1.5), {}, one, 0.5);
    CHECK_FALSE(half.symmetric());
    CHECK(reflect(reflect(half)) == half);
    CHECK_FALSE(reflect(half) == half);
    CHECK(symmetrize(symmetrize(half)) == symmetrize(half));
    auto pm = polar(symmetrize(half));
    CHECK(pm.symmetric());
    CHECK(pm.angular_mass() == Approx(1.0));
    auto pr = polar(reflect(half));
    CHECK(pr.atoms[0].angle == Approx(kPi));
}

TEST_CASE("sigma = 1 cancellation") {
    auto s = MeasureSpec::radial_stable(2, 1.0, 1.0);
    for (auto [r, R] : {std::pair{1e-3, 1.0}, {0.5, 2.0}, {1.0, 1e3}}) {
        auto m = annulus_first_moment(s, r, R);
        CHECK(std::hypot(m[0], m[1]) < 1e-12);
    }
    auto a = MeasureSpec::anisotropic(2, 1.0, {1.0, 2.0});
    auto m = annulus_first_moment(a, 0.1, 10.0);
    CHECK(std::hypot(m[0], m[1]) < 1e-12);
    SphereMeasure one;
    one.uniform = false;
    one.atoms = {{0.0, 1.0}};
    CHECK_THROWS_AS(MeasureSpec::radial_angular(1, RadialProfile::power(1.0, -2.0), {}, one, 1.0),
                    DomainError);
}

TEST_CASE("construction checks") {
    CHECK_THROWS_AS(MeasureSpec::radial_stable(1, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(MeasureSpec::radial_stable(3, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(MeasureSpec::anisotropic(2, 1.0, {1.0}), DomainError);
    // r^{-3} in d=1 is not a Lévy measure (|y|² ∧ 1 not integrable)
    CHECK_THROWS_AS(MeasureSpec::radial_angular(1, RadialProfile::power(1.0, -3.5), {}, {}, 1.5),
                    DomainError);
    auto warned = MeasureSpec::radial_angular(1, RadialProfile::power_log(1.0, -1.5, 0.0), {}, {}, 1.2);
    CHECK(warned.warnings().size() == 1);
}

TEST_CASE("config round trip") {
    auto cfg = Config::parse("family = anisotropic\ndim = 2\nalpha = 1\nc = 1, 2  # weights\n");
    auto a = measure_from_config(cfg);
    CHECK(tail_mass(a, 1.0) == Approx(6.0));
    auto again = measure_from_config(Config::parse(serialize(a)));
    CHECK(again == a);
    auto u = rescale(unimodal_2d(), 4.0);
    auto u2 = measure_from_config(Config::parse(serialize(u)));
    CHECK(tail_mass(u2, 2.0) == Approx(tail_mass(u, 2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(Config::parse("family radial_stable"), ConfigError);
    CHECK_THROWS_AS(measure_from_config(Config::parse("family = bogus")), ConfigError);
    CHECK_THROWS_AS(measure_from_config(Config::parse("family = radial_stable\nalpha = x")),
                    ConfigError);
}
