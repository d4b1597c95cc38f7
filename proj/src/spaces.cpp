#include "levy/spaces.hpp"

#include "levy/error.hpp"
#include "levy/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace levy {

namespace {
constexpr double kPi = std::numbers::pi;
}

Spectrum norm_multiplier(const MeasureSpec& spec, const SpectralGrid& grid, double s, MultiplierKind kind) {
    if (!std::isfinite(s)) throw DomainError("smoothness s must be a finite real number");
    if (grid.dim != spec.dim()) throw DomainError("grid and measure dimensions differ");
    if (kind == MultiplierKind::Generator) {
        SymbolEvaluator ev(polar(spec), grid.xi_min(), grid.xi_max());
        return sample_symbol(grid, [&](const Vec& xi) { return ev(xi); });
    }
    SymbolEvaluator ev(polar(symmetrize(spec)), grid.xi_min(), grid.xi_max());
    return sample_symbol(grid, [&](const Vec& xi) -> cplx {
        const double a = -ev(xi).real();  // ν_sym has a real symbol
        if (kind == MultiplierKind::Bessel) return std::pow(1.0 + a, s);
        if (a <= 0.0) return 0.0;
        return -std::pow(a, s);
    });
}

double multiplier_norm(const SpectralGrid& grid, const Field& field, const MeasureSpec& spec, double s, double p,
                       MultiplierKind kind) {
    if (field.size() != grid.size()) throw DomainError("field does not match the grid");
    if (kind == MultiplierKind::Bessel && s == 0.0) return lp_norm(grid, field, p);
    return lp_norm(grid, apply_multiplier(grid, field, norm_multiplier(spec, grid, s, kind)), p);
}

NormReport norm_report(const SpectralGrid& grid, const Field& field, const MeasureSpec& spec, double s, double p) {
    NormReport r;
    r.s = s;
    r.p = p;
    r.lp = lp_norm(grid, field, p);
    r.generator_lp = multiplier_norm(grid, field, spec, s, p, MultiplierKind::Generator);
    r.bessel = multiplier_norm(grid, field, spec, s, p, MultiplierKind::Bessel);
    return r;
}

double spacetime_norm(const Trajectory& traj, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("L_p norm needs 1 <= p < inf");
    if (traj.times.size() != traj.fields.size() || traj.times.empty())
        throw DomainError("trajectory needs one field per time node");
    for (std::size_t i = 1; i < traj.times.size(); ++i)
        if (!(traj.times[i] > traj.times[i - 1])) throw DomainError("trajectory time nodes must increase");
    for (const auto& f : traj.fields)
        if (f.size() != traj.grid.size()) throw DomainError("trajectory field does not match the grid");

    // ∫|v|^p along a segment from v0 to v1: F(v) = |v|^{p+1}sgn(v)/(p+1) is an antiderivative
    auto segment = [p](double v0, double v1) {
        const double dv = v1 - v0;
        const double scale = std::max(std::abs(v0), std::abs(v1));
        if (scale == 0.0) return 0.0;
        if (std::abs(dv) <= 1e-6 * scale) return std::pow(std::abs(0.5 * (v0 + v1)), p);
        auto F = [p](double v) { return std::copysign(std::pow(std::abs(v), p + 1.0), v) / (p + 1.0); };
        return (F(v1) - F(v0)) / dv;
    };
    double total = 0.0;
    for (std::size_t i = 1; i < traj.times.size(); ++i) {
        const double h = traj.times[i] - traj.times[i - 1];
        const Field& a = traj.fields[i - 1];
        const Field& b = traj.fields[i];
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) s += segment(a[k], b[k]);
        total += h * s * traj.grid.cell();
    }
    return std::pow(total, 1.0 / p);
}

ContinuityReport continuity_ratio(const MeasureSpec& pi, const MeasureSpec& spec, const SpectralGrid& grid,
                                  const std::vector<Field>& fields, double p) {
    const Spectrum mp = norm_multiplier(pi, grid, 0.0, MultiplierKind::Generator);
    const Spectrum mn = norm_multiplier(spec, grid, 0.0, MultiplierKind::Generator);
    ContinuityReport r;
    for (const auto& f : fields) {
        const double den = lp_norm(grid, apply_multiplier(grid, f, mn), p);
        if (den < 1e-12) {
            ++r.skipped;
            continue;
        }
        ++r.used;
        r.sup = std::max(r.sup, lp_norm(grid, apply_multiplier(grid, f, mp), p) / den);
    }
    return r;
}

EquivalenceReport norm_equivalence(const MeasureSpec& spec, const SpectralGrid& grid, const std::vector<Field>& fields,
                                   double p) {
    const Spectrum frac = norm_multiplier(spec, grid, 1.0, MultiplierKind::Fractional);
    const Spectrum gen = norm_multiplier(spec, grid, 0.0, MultiplierKind::Generator);
    EquivalenceReport r{std::numeric_limits<double>::infinity(), 0.0};
    for (const auto& f : fields) {
        const double base = lp_norm(grid, f, p);
        const double den = base + lp_norm(grid, apply_multiplier(grid, f, gen), p);
        if (den == 0.0) continue;
        const double q = (base + lp_norm(grid, apply_multiplier(grid, f, frac), p)) / den;
        r.low = std::min(r.low, q);
        r.high = std::max(r.high, q);
    }
    return r;
}

std::vector<Field> test_corpus(const SpectralGrid& grid, std::uint64_t seed) {
    const std::size_t N = grid.size();
    const double L = grid.L;
    std::vector<Field> out;
    auto radius = [&](std::size_t i, Vec c) {
        const Vec x = grid.point(i);
        return std::hypot(x[0] - c[0], grid.dim == 2 ? x[1] - c[1] : 0.0);
    };
    for (double w : {L / 16.0, L / 8.0, L / 4.0}) {
        for (Vec c : {Vec{0.0, 0.0}, Vec{L / 5.0, -L / 7.0}}) {
            Field f(N);
            for (std::size_t i = 0; i < N; ++i) f[i] = std::exp(-0.5 * std::pow(radius(i, c) / w, 2));
            out.push_back(std::move(f));
        }
    }
    // φ(x − a) − φ(x + a) with the compact bump φ(x) = exp(−1/(1 − |x/r|²))
    auto bump = [](double q) { return q < 1.0 ? std::exp(-1.0 / (1.0 - q * q)) : 0.0; };
    for (double r : {L / 8.0, L / 4.0}) {
        const Vec a{r / 2.0, grid.dim == 2 ? r / 3.0 : 0.0};
        Field f(N);
        for (std::size_t i = 0; i < N; ++i)
            f[i] = bump(radius(i, a) / r) - bump(radius(i, {-a[0], -a[1]}) / r);
        out.push_back(std::move(f));
    }
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const int kmax = std::max(1, grid.n / 8);
    for (int field = 0; field < 4; ++field) {
        Field f(N, 0.0);
        for (int mode = 0; mode < 16; ++mode) {
            const int k0 = 1 + static_cast<int>(eng() % kmax);
            const int k1 = grid.dim == 2 ? static_cast<int>(eng() % (2 * kmax + 1)) - kmax : 0;
            const double amp = gauss(eng) / (1.0 + std::hypot(k0, k1));
            const double ph = phase(eng);
            for (std::size_t i = 0; i < N; ++i) {
                const Vec x = grid.point(i);
                f[i] += amp * std::cos(2.0 * kPi * (k0 * x[0] + k1 * x[1]) / (2.0 * L) + ph);
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace levy
