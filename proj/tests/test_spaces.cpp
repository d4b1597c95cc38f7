#include <doctest.h>

#include "levy/density.hpp"
#include "levy/error.hpp"
#include "levy/spaces.hpp"

#include <cmath>
#include <numbers>

using namespace levy;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const auto cauchy = MeasureSpec::radial_stable(1, 1.0, 1.0);

Field cosine(const SpectralGrid& g, double xi0) {
    Field f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::cos(2.0 * kPi * xi0 * g.point(i)[0]);
    return f;
}
}  // namespace

TEST_CASE("multiplier norms") {
    const auto g = SpectralGrid::make(1, 256, 8.0);
    const auto corpus = test_corpus(g);
    for (double p : {1.0, 2.0, 4.0, 8.0})
        for (const auto& f : corpus)
            CHECK(multiplier_norm(g, f, cauchy, 0.0, p, MultiplierKind::Bessel) == lp_norm(g, f, p));
    const double xi0 = 5.0 / 16.0;
    const Field c = cosine(g, xi0);
    CHECK(multiplier_norm(g, c, cauchy, 0.0, 2.0, MultiplierKind::Generator) ==
          Approx(2.0 * kPi * kPi * xi0 * lp_norm(g, c, 2.0)).epsilon(1e-10));
    // the same multiplier through apply_generator
    for (const auto& f : corpus)
        CHECK(std::abs(multiplier_norm(g, f, cauchy, 0.0, 2.0, MultiplierKind::Generator) -
                       lp_norm(g, apply_generator(cauchy, g, f), 2.0)) < 1e-12);
    // |1 − ψ| ≥ 1 everywhere, so the Bessel norm grows with s
    for (const auto& f : corpus) {
        double last = 0.0;
        for (double s : {0.0, 0.25, 0.5, 1.0}) {
            const double v = multiplier_norm(g, f, cauchy, s, 2.0, MultiplierKind::Bessel);
            CHECK(v >= last * (1.0 - 1e-12));
            last = v;
        }
    }
    CHECK_THROWS_AS(multiplier_norm(g, c, cauchy, std::nan(""), 2.0, MultiplierKind::Bessel), DomainError);
}

TEST_CASE("norm axioms") {
    const auto g = SpectralGrid::make(1, 256, 8.0);
    const auto corpus = test_corpus(g);
    for (auto kind : {MultiplierKind::Bessel, MultiplierKind::Fractional, MultiplierKind::Generator}) {
        for (double p : {1.0, 2.0, 4.0}) {
            const Field& a = corpus[1];
            const Field& b = corpus[8];
            Field sum(a.size()), scaled(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                sum[i] = a[i] + b[i];
                scaled[i] = -3.0 * a[i];
            }
            const double na = multiplier_norm(g, a, cauchy, 0.7, p, kind);
            const double nb = multiplier_norm(g, b, cauchy, 0.7, p, kind);
            CHECK(multiplier_norm(g, sum, cauchy, 0.7, p, kind) <= (na + nb) * (1.0 + 1e-12));
            CHECK(multiplier_norm(g, scaled, cauchy, 0.7, p, kind) == Approx(3.0 * na).epsilon(1e-12));
        }
    }
}

TEST_CASE("space-time norms") {
    const auto g = SpectralGrid::make(1, 128, 8.0);
    const Field f = test_corpus(g)[0];
    Trajectory flat{g, {}, {}}, lin{g, {}, {}};
    const double T = 1.5;
    for (int i = 0; i <= 6; ++i) {
        const double t = T * i / 6.0;
        flat.times.push_back(t);
        flat.fields.push_back(f);
        lin.times.push_back(t);
        Field u = f;
        for (double& v : u) v *= t;
        lin.fields.push_back(u);
    }
    for (double p : {1.0, 2.0, 4.0, 8.0}) {
        CHECK(spacetime_norm(flat, p) == Approx(std::pow(T, 1.0 / p) * lp_norm(g, f, p)).epsilon(1e-12));
        CHECK(spacetime_norm(lin, p) ==
              Approx(std::pow(std::pow(T, p + 1) / (p + 1), 1.0 / p) * lp_norm(g, f, p)).epsilon(1e-10));
    }
    Trajectory one{g, {0.3}, {f}};
    CHECK(spacetime_norm(one, 2.0) == 0.0);
    Trajectory bad{g, {0.0, 0.5, 0.4}, {f, f, f}};
    CHECK_THROWS_AS(spacetime_norm(bad, 2.0), DomainError);
}

TEST_CASE("continuity and norm equivalence") {
    const auto g = SpectralGrid::make(1, 256, 8.0);
    const auto corpus = test_corpus(g);
    CHECK(continuity_ratio(cauchy, cauchy, g, corpus, 2.0).sup == Approx(1.0).epsilon(1e-12));
    CHECK(continuity_ratio(symmetrize(cauchy), cauchy, g, corpus, 2.0).sup == Approx(1.0).epsilon(1e-12));
    Field flat(g.size(), 1.0);
    const auto r = continuity_ratio(cauchy, cauchy, g, {flat}, 2.0);
    CHECK(r.skipped == 1);
    CHECK(r.used == 0);

    // m(y) between ½ and 2
    auto m = CoefficientSpec::time_separable({1.0}, {1.25, 0.75, {1.0, 0.0}, 0.0});
    auto weighted = [&](const SpectralGrid& gg) {
        const PolarMeasure pm = weighted_polar(polar(cauchy), m.terms()[0]);
        SymbolEvaluator ev(pm, gg.xi_min(), gg.xi_max());
        const Spectrum mp = sample_symbol(gg, [&](const Vec& xi) { return ev(xi); });
        const Spectrum mn = norm_multiplier(cauchy, gg, 0.0, MultiplierKind::Generator);
        double sup = 0.0;
        for (const auto& f : test_corpus(gg))
            sup = std::max(sup, lp_norm(gg, apply_multiplier(gg, f, mp), 2.0) / lp_norm(gg, apply_multiplier(gg, f, mn), 2.0));
        return sup;
    };
    const double a = weighted(g), b = weighted(SpectralGrid::make(1, 512, 8.0));
    CHECK(std::isfinite(a));
    CHECK(b == Approx(a).epsilon(0.1));

    const auto e = norm_equivalence(cauchy, g, corpus, 2.0);
    // ν symmetric: L^{ν;1} = L^ν
    CHECK(e.low == Approx(1.0).epsilon(1e-12));
    CHECK(e.high == Approx(1.0).epsilon(1e-12));
}
