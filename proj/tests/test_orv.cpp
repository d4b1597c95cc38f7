#include <doctest.h>

#include "levy/error.hpp"
#include "levy/measures.hpp"
#include "levy/orv.hpp"

#include <cmath>

using namespace levy;
using doctest::Approx;

TEST_CASE("indices of power and log-corrected profiles") {
    auto r = estimate_indices(RadialProfile::power(1.0, 0.7));
    for (double v : {r.p1, r.q1, r.p2, r.q2}) CHECK(std::abs(v - 0.7) < 0.05);

    auto lg = estimate_indices(RadialProfile::power_log(1.0, 0.5, 0.25));
    CHECK(std::abs(lg.p1 - 0.75) < 0.05);
    CHECK(std::abs(lg.q1 - 0.75) < 0.05);
    CHECK(std::abs(lg.p2 - 0.5) < 0.05);
    CHECK(std::abs(lg.q2 - 0.5) < 0.05);
    CHECK(lg.p1 <= lg.q1);
    CHECK(lg.p2 <= lg.q2);

    auto w = w_profile(MeasureSpec::anisotropic(2, 1.0, {1.0, 1.0}));
    auto ex = estimate_indices(w);
    for (double v : {ex.p1, ex.q1, ex.p2, ex.q2}) CHECK(std::abs(v - 1.0) < 0.02);
}

TEST_CASE("indices need enough range") {
    std::vector<double> r, v;
    for (int k = -12; k <= 12; ++k) {
        r.push_back(std::ldexp(1.0, k));
        v.push_back(std::ldexp(1.0, k));
    }
    CHECK_THROWS_AS(estimate_indices(RadialProfile::tabulated(r, v)), DomainError);
    auto neg = RadialProfile::from_function([](double x) { return x > 1 ? -1.0 : x; }, "bad");
    CHECK_THROWS_AS(estimate_indices(neg), DomainError);
}

TEST_CASE("tabulated log-log profile keeps exact power indices") {
    std::vector<double> r, v;
    for (int k = -30; k <= 30; ++k) {
        r.push_back(std::ldexp(1.0, k));
        v.push_back(std::pow(r.back(), 0.6));
    }
    auto rep = estimate_indices(RadialProfile::tabulated(r, v));
    CHECK(rep.p1 == Approx(0.6).epsilon(1e-9));
    CHECK(rep.q2 == Approx(0.6).epsilon(1e-9));
}

TEST_CASE("assumption A") {
    ORVReport r;
    r.p1 = r.q1 = r.p2 = r.q2 = 0.7;
    CHECK(check_assumption_A(r, 0.7).pass);
    auto bad = check_assumption_A(r, 1.5);
    CHECK_FALSE(bad.pass);
    CHECK(bad.reasons.front() == "p1 <= 1");
    r.p1 = r.q1 = r.p2 = r.q2 = 1.0;
    CHECK(check_assumption_A(r, 1.0).pass);
    CHECK_FALSE(check_assumption_A(r, 0.5).pass);
}

TEST_CASE("inverse profile") {
    auto w = RadialProfile::power(0.25, 1.0);
    CHECK(inverse_profile(w)(2.0) == Approx(8.0).epsilon(1e-14));
    CHECK(inverse_profile(RadialProfile::power(1.0, 0.5))(3.0) == Approx(9.0).epsilon(1e-14));
    auto lg = RadialProfile::power_log(1.0, 0.5, 0.25);
    auto a = inverse_profile(lg);
    for (double t : {1e-4, 0.3, 1.0, 7.0, 1e4}) CHECK(lg(a(t)) == Approx(t).epsilon(1e-10));
    for (double s : {1e-3, 0.5, 2.0, 1e3}) CHECK(a(lg(s)) == Approx(s).epsilon(1e-9));
    // left-continuous inverse of a step-like table
    auto tab = RadialProfile::tabulated({1.0, 2.0, 4.0}, {1.0, 4.0, 16.0});
    auto at = inverse_profile(tab);
    CHECK(at(4.0) == Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(at(1e9), DomainError);
}

TEST_CASE("Karamata closed-form ratios") {
    auto w = RadialProfile::power(1.0, 0.5);
    auto a = karamata_check(w, 0.5, 1.0, KaramataRegime::ZeroA);
    CHECK(a.sup == Approx(1.0).epsilon(1e-9));
    auto b = karamata_check(w, -1.0, 1.0, KaramataRegime::ZeroB);
    // ∫_x^1 t^{-3/2} dt / x^{-1/2} = 2(1 - √x), largest at x = 2^{-60}
    CHECK(b.sup == Approx(2.0 * (1.0 - std::ldexp(1.0, -30))).epsilon(1e-12));
    CHECK(std::abs(b.sup - 2.0) < 1e-6);
    CHECK(a.limit_value < 1e-17);
    CHECK_THROWS_AS(karamata_check(w, -0.5, 1.0, KaramataRegime::ZeroA), DomainError);
    CHECK_THROWS_AS(karamata_check(w, 0.5, -1.0, KaramataRegime::ZeroA), DomainError);
}

TEST_CASE("Karamata regimes are finite and quadrature-stable") {
    auto w = RadialProfile::power_log(1.0, 0.5, 0.25);  // indices 3/4 at 0, 1/2 at infinity
    struct Case {
        KaramataRegime r;
        double tau, beta;
    } cases[] = {
        {KaramataRegime::ZeroA, 0.0, 1.0},  {KaramataRegime::ZeroB, -1.0, 1.0},
        {KaramataRegime::ZeroC, 1.0, -1.0}, {KaramataRegime::ZeroD, 0.5, -1.0},
        {KaramataRegime::InfA, -1.0, 1.0},  {KaramataRegime::InfB, 0.0, 1.0},
        {KaramataRegime::InfC, 0.2, -1.0},  {KaramataRegime::InfD, 1.0, -1.0},
    };
    for (const auto& c : cases) {
        auto r1 = karamata_check(w, c.tau, c.beta, c.r, 1);
        auto r2 = karamata_check(w, c.tau, c.beta, c.r, 2);
        CHECK_FALSE(r1.divergent);
        CHECK(std::isfinite(r1.sup));
        CHECK(std::abs(r2.sup / r1.sup - 1.0) < 0.05);
    }
}

TEST_CASE("sandwich constants") {
    auto s = profile_sandwich(RadialProfile::power(1.0, 0.7), 0.9, 0.5);
    CHECK(s.c1 == Approx(1.0));
    CHECK(s.c2 == Approx(1.0));
    auto l = profile_sandwich(RadialProfile::power_log(1.0, 0.5, 0.25), 0.9, 0.3);
    CHECK(l.c1 > 0.0);
    CHECK(std::isfinite(l.c2));
    CHECK_THROWS_AS(profile_sandwich(RadialProfile::power(1.0, 0.5), 0.9, 0.6), DomainError);
}

TEST_CASE("unimodal scale profile is comparable to gamma") {
    auto g = RadialProfile::power_log(1.0, 0.5, 0.25);
    auto spec = MeasureSpec::isotropic_unimodal(2, g, 1.0, 1.0, 0.75);
    auto w = w_profile(spec);
    double lo = 1e300, hi = 0;
    for (int k = -10; k <= 10; ++k) {
        const double r = std::ldexp(1.0, k);
        const double q = w(r) / g(r);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 10.0 * lo);
}
