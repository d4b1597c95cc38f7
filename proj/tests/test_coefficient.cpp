#include <doctest.h>

#include "levy/coefficient.hpp"
#include "levy/error.hpp"
#include "levy/symbol.hpp"

#include <cmath>
#include <numbers>

using namespace levy;
using doctest::Approx;

TEST_CASE("coefficient bounds") {
    auto c = CoefficientSpec::constant(2.0);
    CHECK(c.k() == 2.0);
    CHECK(c.K() == 2.0);
    CHECK_THROWS_AS(CoefficientSpec::constant(0.0), DomainError);

    auto ts = CoefficientSpec::time_separable({1.0, 0.5, {1.0, 0.0}, 0.0}, {2.0, 1.0, {0.3, 0.0}, 0.0});
    CHECK(ts.k() == Approx(0.5));
    CHECK(ts.K() == Approx(4.5));
    CHECK(ts.t_dependent());
    CHECK(ts.y_dependent());
    CHECK_FALSE(ts.x_dependent());
    CHECK_THROWS_AS(CoefficientSpec::time_separable({0.5, 0.5, {1.0, 0.0}, 0.0}, {}), DomainError);

    CoefficientTerm a, b;
    a.x = {1.0, 0.3, {1.0, 0.0}, 0.0};
    b.x = {0.5, 0.2, {0.0, 2.0}, 0.0};
    auto e = CoefficientSpec::expression({a, b});
    CHECK(e.k() >= 1.0 - 1e-12);
    CHECK(e.K() <= 2.0 + 1e-12);
    CHECK(e.x_dependent());
    CHECK_THROWS_AS(CoefficientSpec::expression({a, b}, 1.2), DomainError);
    CHECK(CoefficientSpec::expression({a, b}, 0.9, 2.5).K() == 2.5);
}

TEST_CASE("hoelder modulus") {
    CoefficientTerm a;
    a.x = {1.0, 0.2, {1.0, 0.0}, 0.0};
    auto e = CoefficientSpec::expression({a}, 0.0, 0.0, 0.5);
    CHECK(e.kappa(0.0) == 0.0);
    CHECK(e.kappa(1e-3) == Approx(2.0 * std::numbers::pi * 0.2 * 1e-3));
    CHECK(e.kappa(10.0) == Approx(0.4));
    // |m(x) − m(x')| ≤ κ(|x − x'|)
    for (double d : {1e-3, 0.1, 0.7})
        CHECK(std::abs(e(0.0, {0.2 + d, 0.0}, {1.0, 0.0}) - e(0.0, {0.2, 0.0}, {1.0, 0.0})) <=
              e.kappa(d) + 1e-15);
    CHECK(std::isfinite(e.kappa_integral(1)));
    CHECK(CoefficientSpec::constant(1.0).kappa_integral(2) == 0.0);
}

TEST_CASE("rescale and freeze") {
    CoefficientTerm a;
    a.r = {1.0, 0.5, {0.25, 0.0}, 0.1};
    a.x = {1.0, 0.3, {1.0, 0.0}, 0.0};
    auto e = CoefficientSpec::expression({a});
    auto r = e.rescale_y(8.0);
    for (double y : {0.1, 1.0, 3.0})
        CHECK(r(0.0, {0.0, 0.0}, {y, 0.0}) == Approx(e(0.0, {0.0, 0.0}, {8.0 * y, 0.0})).epsilon(1e-12));
    auto f = e.frozen_at({0.25, 0.0});
    CHECK_FALSE(f.x_dependent());
    CHECK(f(0.0, {0.9, 0.0}, {2.0, 0.0}) == Approx(e(0.0, {0.25, 0.0}, {2.0, 0.0})).epsilon(1e-14));
}

TEST_CASE("weighted polar measure") {
    auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    CoefficientTerm t;
    t.r = {2.0, 0.0, {0.0, 0.0}, 0.0};
    const auto pm = weighted_polar(polar(s), t);
    CHECK(pm.power);
    CHECK(psi_polar(pm, {1.0, 0.0}).real() == Approx(2.0 * psi(s, {1.0, 0.0}).re));
    t.r = {1.0, 0.5, {0.5, 0.0}, 0.0};
    const auto pr = weighted_polar(polar(s), t);
    CHECK_FALSE(pr.power);
    CHECK(pr.rho(1.0) == Approx(1.5 * polar(s).rho(1.0)));
    auto x = CoefficientSpec::expression({CoefficientTerm{{}, {1.0, 0.5, {1.0, 0.0}, 0.0}, {}, {}}});
    CHECK_THROWS_AS(psi_m(s, x, 0.0, {1.0, 0.0}), DomainError);
}

TEST_CASE("coefficient config") {
    auto c = coefficient_from_config(Config::parse("form = time_separable\nt = 1, 0.5, 1, 0\n", "t"));
    CHECK(c.form() == CoefficientSpec::Form::TimeSeparable);
    CHECK(c.K() == Approx(1.5));
    auto e = coefficient_from_config(
        Config::parse("form = expression\nterm1.x = 1, 0.2, 1, 2, 0\nterm2.t = 0.5, 0, 0, 0\nbeta = 0.3\n", "e"));
    CHECK(e.terms().size() == 2);
    CHECK(e.beta() == 0.3);
    CHECK(e.terms()[0].x.freq[1] == 2.0);
    CHECK_THROWS_AS(coefficient_from_config(Config::parse("form = wavy\n", "w")), ConfigError);
    CHECK_THROWS_AS(coefficient_from_config(Config::parse("form = time_separable\nt = 1, 2\n", "w")),
                    ConfigError);
}
