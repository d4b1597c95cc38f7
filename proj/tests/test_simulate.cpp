#include <doctest.h>

#include "levy/error.hpp"
#include "levy/simulate.hpp"
#include "levy/symbol.hpp"

#include <cmath>
#include <numbers>

using namespace levy;

namespace {
constexpr double kPi = std::numbers::pi;

SamplePlan plan(const MeasureSpec& s, std::size_t n, double eps, std::uint64_t seed) {
    SamplePlan p{s};
    p.n = n;
    p.eps = eps;
    p.seed = seed;
    return p;
}

// |ecf − exp ∫ψ| within the CLT envelope plus the dropped-jump bias
void check_cf(const SamplePlan& p, const std::vector<Vec>& x, const std::vector<Vec>& xis) {
    const auto cf = empirical_cf(x, xis);
    for (std::size_t i = 0; i < xis.size(); ++i) {
        const cplx exact = std::exp(psi_time_avg(p.spec, p.coeff, p.s, p.t, xis[i]).value());
        CAPTURE(xis[i][0]);
        CAPTURE(xis[i][1]);
        CHECK(std::abs(cf[i] - exact) < 5.0 / std::sqrt(double(x.size())) + truncation_bias(p, xis[i]));
    }
}
}  // namespace

TEST_CASE("empirical cf basics") {
    const std::vector<Vec> x{{0.3, 0.0}, {-1.2, 0.0}, {2.5, 0.0}};
    CHECK(empirical_cf(x, {{0.0, 0.0}})[0] == cplx(1.0, 0.0));
    const auto a = empirical_cf(x, {{0.7, 0.0}, {-0.7, 0.0}});
    CHECK(std::abs(a[1] - std::conj(a[0])) < 1e-15);
    CHECK_THROWS_AS(empirical_cf({}, {{1.0, 0.0}}), DomainError);
}

TEST_CASE("cauchy increments match the characteristic function") {
    const auto p = plan(MeasureSpec::radial_stable(1, 1.0, 1.0), 20000, 1e-3, 11);
    CHECK(expected_jumps(p) == doctest::Approx(2000.0));
    const auto x = sample_increments(p);
    check_cf(p, x, {{0.25, 0.0}, {0.5, 0.0}, {1.0, 0.0}});
    const auto d = compensator_drift(p);
    CHECK(std::abs(d[0]) < 1e-12);
}

TEST_CASE("sampling is deterministic and stream indexed") {
    const auto p = plan(MeasureSpec::radial_stable(1, 1.5, 1.0), 100, 1e-2, 3);
    auto q = p;
    q.n = 10;
    const auto a = sample_increments(p), b = sample_increments(p), c = sample_increments(q);
    CHECK(a == b);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == a[i]);
    q.seed = 4;
    CHECK(sample_increments(q)[0] != a[0]);
}

TEST_CASE("symmetric increments have zero mean") {
    const auto p = plan(MeasureSpec::radial_stable(1, 1.8, 1.0), 20000, 1e-2, 5);
    const auto x = sample_increments(p);
    double m = 0.0, m2 = 0.0;
    for (const auto& v : x) {
        m += v[0];
        m2 += v[0] * v[0];
    }
    m /= x.size();
    const double sd = std::sqrt(m2 / x.size() - m * m);
    CHECK(std::abs(m) < 4.0 * sd / std::sqrt(double(x.size())));
}

TEST_CASE("tabulated radial law, isotropic d = 2 and time-dependent thinning") {
    auto lg = MeasureSpec::radial_angular(1, RadialProfile::power_log(1.0, -1.5, -0.25), {}, {}, 0.75);
    auto p = plan(lg, 20000, 1e-3, 21);
    check_cf(p, sample_increments(p), {{0.2, 0.0}, {1.0, 0.0}});

    auto p2 = plan(MeasureSpec::radial_stable(2, 1.2, 1.0), 20000, 1e-2, 22);
    check_cf(p2, sample_increments(p2), {{0.3, 0.0}, {0.2, -0.4}});

    auto p3 = plan(MeasureSpec::radial_stable(1, 0.6, 1.0), 20000, 1e-3, 23);
    p3.coeff = CoefficientSpec::time_separable({1.0, 0.5, {1.0, 0.0}, -kPi / 2}, {});
    p3.s = 0.1;
    p3.t = 0.6;
    check_cf(p3, sample_increments(p3), {{0.5, 0.0}, {2.0, 0.0}});
}

TEST_CASE("increments add over adjacent intervals") {
    const auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    auto a = plan(s, 20000, 1e-3, 31), b = plan(s, 20000, 1e-3, 32);
    a.t = 0.4;
    b.s = 0.4;
    const auto xa = sample_increments(a), xb = sample_increments(b);
    std::vector<Vec> sum(xa.size());
    for (std::size_t i = 0; i < xa.size(); ++i) sum[i] = {xa[i][0] + xb[i][0], 0.0};
    check_cf(plan(s, 20000, 1e-3, 0), sum, {{0.25, 0.0}, {0.5, 0.0}});
}

TEST_CASE("plan validation") {
    const auto s = MeasureSpec::radial_stable(1, 1.0, 1.0);
    CHECK_THROWS_AS(sample_increments(plan(s, 10, 0.0, 1)), DomainError);
    CHECK_THROWS_AS(sample_increments(plan(s, 10, 1e-9, 1)), DomainError);  // 2e9 jumps per path
    CHECK_THROWS_AS(sample_increments(plan(s, 0, 1e-2, 1)), DomainError);
}
