#include "levy/density.hpp"

#include "levy/error.hpp"
#include "levy/orv.hpp"
#include "levy/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace levy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

using GL4 = boost::math::quadrature::gauss<double, 4>;
using GL20 = boost::math::quadrature::gauss<double, 20>;

int next_pow2(double v) {
    int n = 4;
    while (n < v) n *= 2;
    return n;
}

// Nodes and weights of a composite 4-point Gauss rule on [a, b].
void composite_gauss(double a, double b, int pieces, std::vector<double>& x, std::vector<double>& w) {
    x.clear();
    w.clear();
    const double h = (b - a) / pieces;
    const auto& ab = GL4::abscissa();
    const auto& wt = GL4::weights();
    for (int p = 0; p < pieces; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t i = 0; i < ab.size(); ++i) {
            const double offs[2] = {ab[i], -ab[i]};
            for (int s = 0; s < (ab[i] == 0.0 ? 1 : 2); ++s) {
                x.push_back(mid + 0.5 * h * offs[s]);
                w.push_back(0.5 * h * wt[i]);
            }
        }
    }
}

bool on_edge(const SpectralGrid& g, std::size_t i) {
    if (g.dim == 1) return static_cast<int>(i) == g.n / 2;
    return static_cast<int>(i / g.n) == g.n / 2 || static_cast<int>(i % g.n) == g.n / 2;
}

double l1_outside(const SpectralGrid& g, const Field& f, double radius) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec x = g.point(i);
        if (std::hypot(x[0], x[1]) > radius) s += std::abs(f[i]);
    }
    return s * g.cell();
}

double l1(const SpectralGrid& g, const Field& f) { return l1_outside(g, f, -1.0); }

}  // namespace

Propagator::Propagator(const MeasureSpec& spec, const CoefficientSpec& coeff, double xi_min,
                       double xi_max) {
    if (coeff.x_dependent())
        throw DomainError("coefficient depends on x: densities need m = m(t, y)");
    TermSymbols ts = term_symbols(spec, coeff, xi_min, xi_max);
    time_ = ts.time;
    for (const auto& h : ts.space) space_.push_back(h.at({0.0, 0.0}));
    eval_ = std::move(ts.eval);
}

std::vector<cplx> Propagator::parts(const Vec& xi) const {
    std::vector<cplx> p(eval_.size());
    for (std::size_t k = 0; k < eval_.size(); ++k) p[k] = space_[k] * eval_[k](xi);
    return p;
}

std::vector<double> Propagator::weights(double s, double t) const {
    std::vector<double> w(time_.size());
    for (std::size_t k = 0; k < time_.size(); ++k) w[k] = time_[k].integral(s, t);
    return w;
}

std::vector<double> Propagator::rates(double t) const {
    std::vector<double> w(time_.size());
    for (std::size_t k = 0; k < time_.size(); ++k) w[k] = time_[k](t);
    return w;
}

cplx Propagator::exponent(double s, double t, const Vec& xi) const {
    const auto p = parts(xi);
    const auto w = weights(s, t);
    cplx e = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) e += w[k] * p[k];
    return e;
}

cplx Propagator::symbol(double t, const Vec& xi) const {
    const auto p = parts(xi);
    const auto w = rates(t);
    cplx e = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) e += w[k] * p[k];
    return e;
}

double DensityField::peak() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
}

double space_scale(const MeasureSpec& spec, double tau) {
    if (!(tau > 0.0)) throw DomainError("space scale needs a positive time");
    return inverse_profile(w_profile(spec))(tau);
}

DensityField density_from_exponent(const SpectralGrid& grid, const Spectrum& exponent) {
    Transform tr(grid);
    Spectrum s(exponent.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::exp(exponent[i]);
    DensityField d;
    d.grid = grid;
    d.values = tr.inverse(s, &d.imag_residue);
    double mass = 0.0;
    for (double v : d.values) mass += v;
    d.mass_defect = std::abs(1.0 - mass * grid.cell());
    return d;
}

namespace {

Spectrum sample_exponent(const Propagator& P, const SpectralGrid& grid, double s, double t,
                         double scale = 1.0, double factor = 1.0) {
    const auto w = P.weights(s, t);
    Spectrum e(grid.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const Vec eta = grid.frequency(i);
        if (eta[0] == 0.0 && eta[1] == 0.0) continue;
        const auto p = P.parts({eta[0] / scale, eta[1] / scale});
        cplx v = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) v += w[k] * p[k];
        e[i] = factor * v;
    }
    return e;
}

}  // namespace

DensityField transition_density(const MeasureSpec& spec, const CoefficientSpec& coeff, double s,
                                double t, const SpectralGrid& grid) {
    if (!(s >= 0.0 && t > s)) throw DomainError("transition density needs 0 <= s < t");
    if (grid.dim != spec.dim()) throw DomainError("grid and measure dimensions differ");
    const double a = space_scale(spec, (t - s) * coeff.K());
    if (grid.L < 8.0 * a) {
        const double L = 8.0 * a;
        const int n = next_pow2(grid.n * L / grid.L);
        throw GridTooSmallError("grid half-width below 8·a(t−s)", grid.L, L, n);
    }
    Propagator P(spec, coeff, grid.xi_min(), grid.xi_max());
    const Spectrum E = sample_exponent(P, grid, s, t);
    double edge = 0.0;
    for (std::size_t i = 0; i < E.size(); ++i)
        if (on_edge(grid, i)) edge = std::max(edge, std::exp(E[i].real()));
    if (edge > 1e-6) throw GridTooSmallError("transform has not decayed at the lattice edge", edge, grid.L, grid.n * 2);
    DensityField d = density_from_exponent(grid, E);
    d.s = s;
    d.t = t;
    d.tail_estimate = std::min(1.0, (t - s) * coeff.K() * tail_mass(spec, grid.L));
    if (d.mass_defect > 1e-3)
        throw GridTooSmallError("mass defect above 1e-3", d.mass_defect, 2.0 * grid.L, grid.n * 2);
    return d;
}

ScalingReport check_scaling_identity(const MeasureSpec& spec, const CoefficientSpec& coeff, double s,
                                     double t, const SpectralGrid& grid) {
    const DensityField left = transition_density(spec, coeff, s, t, grid);
    ScalingReport rep;
    rep.R = space_scale(spec, t - s);
    const double R = rep.R;
    const SpectralGrid gR = SpectralGrid::make(grid.dim, grid.n, grid.L / R);
    Propagator PR(rescale(spec, R), coeff.rescale_y(R), gR.xi_min(), gR.xi_max());
    const DensityField right = density_from_exponent(gR, sample_exponent(PR, gR, s, t, 1.0, 1.0 / (t - s)));
    const double Rd = std::pow(R, grid.dim);
    double worst = 0.0;
    for (std::size_t i = 0; i < left.values.size(); ++i)
        worst = std::max(worst, std::abs(left.values[i] - right.values[i] / Rd));
    rep.discrepancy = worst / left.peak();
    return rep;
}

Field apply_generator(const MeasureSpec& pi, const SpectralGrid& grid, const Field& field) {
    if (grid.dim != pi.dim()) throw DomainError("grid and measure dimensions differ");
    SymbolEvaluator ev(polar(pi), grid.xi_min(), grid.xi_max());
    const Spectrum m = sample_symbol(grid, [&](const Vec& xi) { return ev(xi); });
    return apply_multiplier(grid, field, m);
}

double weighted_generator_l1(const MeasureSpec& pi, const MeasureSpec& spec, const CoefficientSpec& coeff,
                             double s, double t, double alpha2, int eta, const SpectralGrid& grid) {
    if (!(s >= 0.0 && t > s)) throw DomainError("weighted generator needs 0 <= s < t");
    if (eta < 0) throw DomainError("derivative order must be non-negative");
    const double R = space_scale(spec, t - s);
    const double wR = w_profile(spec)(R);
    Propagator P(spec, coeff, grid.xi_min() / R, grid.xi_max() / R);
    SymbolEvaluator ev(polar(pi), grid.xi_min() / R, grid.xi_max() / R);
    const Spectrum E = sample_exponent(P, grid, s, t, R, wR / (t - s));
    Spectrum m(grid.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Vec x = grid.frequency(i);
        m[i] = wR * ev({x[0] / R, x[1] / R}) * std::pow(2.0 * kPi * kI * x[0], eta) * std::exp(E[i]);
    }
    Transform tr(grid);
    const Field G = tr.inverse(m);
    double sum = 0.0;
    for (std::size_t i = 0; i < G.size(); ++i) {
        const Vec x = grid.point(i);
        sum += (1.0 + std::pow(std::hypot(x[0], x[1]), alpha2)) * std::abs(G[i]);
    }
    return sum * grid.cell();
}

HormanderReport hormander_suite(const MeasureSpec& spec, const CoefficientSpec& coeff, const MeasureSpec& pi,
                                const HormanderParams& hp, const SpectralGrid& grid) {
    const double t = hp.t;
    for (double s : hp.s_grid)
        if (!(s > 0.0 && s < t)) throw DomainError("part (i) needs 0 < s < t");
    if (!(hp.b > 0.0 && hp.b < t)) throw DomainError("part (ii) needs 0 < b < t");
    if (!(hp.b3 > 0.0 && hp.b3 < hp.s3)) throw DomainError("part (iii) needs 0 < b < s");
    for (double t3 : hp.t3_grid)
        if (t3 < hp.s3) throw DomainError("part (iii) needs s <= t");
    if (hp.subintervals < 32) throw DomainError("time rule needs at least 32 subintervals");
    if (!(hp.beta >= 0.0)) throw DomainError("beta must be non-negative");

    const RadialProfile a = inverse_profile(w_profile(spec));
    // the symbols are sampled at η/R; one table covers every R used below
    double Rmin = a((t - *std::max_element(hp.s_grid.begin(), hp.s_grid.end())) * 1e-4);
    double Rmax = a(std::max(t, *std::max_element(hp.t3_grid.begin(), hp.t3_grid.end())));
    Rmin = std::min(Rmin, a((hp.s3 - hp.b3) * 1e-3));
    Propagator P(spec, coeff, grid.xi_min() / Rmax, grid.xi_max() / Rmin);
    SymbolEvaluator ev(polar(pi), grid.xi_min() / Rmax, grid.xi_max() / Rmin);
    Transform tr(grid);
    const std::size_t N = grid.size();

    auto sample = [&](double R, std::vector<std::vector<cplx>>& parts, Spectrum& psi_pi) {
        parts.assign(N, {});
        psi_pi.assign(N, 0.0);
        for (std::size_t i = 0; i < N; ++i) {
            const Vec x = grid.frequency(i);
            const Vec xi{x[0] / R, x[1] / R};
            if (x[0] == 0.0 && x[1] == 0.0) {
                parts[i].assign(P.terms(), 0.0);
                continue;
            }
            parts[i] = P.parts(xi);
            psi_pi[i] = ev(xi);
        }
    };
    auto expo = [&](const std::vector<std::vector<cplx>>& parts, std::size_t i, const std::vector<double>& w) {
        cplx e = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) e += w[k] * parts[i][k];
        return std::exp(e);
    };

    HormanderReport rep;
    std::vector<double> xs, ws;
    std::vector<std::vector<cplx>> parts;
    Spectrum psi_pi, m(N);

    // (i) ∫_s^t ∫_{|x|>c} |L^π p(r,t,x)| dx dr
    for (double s : hp.s_grid) {
        composite_gauss(s, t, hp.subintervals, xs, ws);
        std::vector<double> lhs(hp.c_grid.size(), 0.0);
        for (std::size_t q = 0; q < xs.size(); ++q) {
            const double r = xs[q];
            const double R = a(t - r);
            sample(R, parts, psi_pi);
            const auto w = P.weights(r, t);
            for (std::size_t i = 0; i < N; ++i) m[i] = psi_pi[i] * expo(parts, i, w);
            const Field G = tr.inverse(m);
            for (std::size_t c = 0; c < hp.c_grid.size(); ++c)
                lhs[c] += ws[q] * l1_outside(grid, G, hp.c_grid[c] / R);
        }
        for (std::size_t c = 0; c < hp.c_grid.size(); ++c) {
            const double rhs = std::pow(hp.c_grid[c], -hp.beta) * std::pow(a(t - s), hp.beta);
            rep.ratio_i = std::max(rep.ratio_i, lhs[c] / rhs);
        }
    }

    // (ii) ∫_0^b ∫ |L^π p(r,t,x+h) − L^π p(r,t,x)| dx dr
    composite_gauss(0.0, hp.b, hp.subintervals, xs, ws);
    rep.lhs_ii.assign(hp.h_grid.size(), 0.0);
    for (std::size_t q = 0; q < xs.size(); ++q) {
        const double r = xs[q];
        const double R = a(t - r);
        sample(R, parts, psi_pi);
        const auto w = P.weights(r, t);
        Spectrum base(N);
        for (std::size_t i = 0; i < N; ++i) base[i] = psi_pi[i] * expo(parts, i, w);
        for (std::size_t j = 0; j < hp.h_grid.size(); ++j) {
            const double hs = hp.h_grid[j] / R;
            for (std::size_t i = 0; i < N; ++i)
                m[i] = base[i] * (std::exp(2.0 * kPi * kI * grid.frequency(i)[0] * hs) - 1.0);
            rep.lhs_ii[j] += ws[q] * l1(grid, tr.inverse(m));
        }
    }
    for (std::size_t j = 0; j < hp.h_grid.size(); ++j)
        rep.ratio_ii = std::max(rep.ratio_ii, rep.lhs_ii[j] / (hp.h_grid[j] / a(t - hp.b)));

    // (iii) ∫_0^b ∫ |L^π p(r,t,x) − L^π p(r,s,x)| dx dr on the grid of scale a(s − r)
    composite_gauss(0.0, hp.b3, hp.subintervals, xs, ws);
    std::vector<double> lhs3(hp.t3_grid.size(), 0.0);
    for (std::size_t q = 0; q < xs.size(); ++q) {
        const double r = xs[q];
        const double R = a(hp.s3 - r);
        sample(R, parts, psi_pi);
        const auto ws_ = P.weights(r, hp.s3);
        for (std::size_t j = 0; j < hp.t3_grid.size(); ++j) {
            const auto wt = P.weights(r, hp.t3_grid[j]);
            for (std::size_t i = 0; i < N; ++i) m[i] = psi_pi[i] * (expo(parts, i, wt) - expo(parts, i, ws_));
            lhs3[j] += ws[q] * l1(grid, tr.inverse(m));
        }
    }
    for (std::size_t j = 0; j < hp.t3_grid.size(); ++j) {
        const double dt = hp.t3_grid[j] - hp.s3;
        if (dt == 0.0) {
            rep.lhs_iii_equal = std::max(rep.lhs_iii_equal, lhs3[j]);
            continue;
        }
        rep.ratio_iii = std::max(rep.ratio_iii, lhs3[j] / (dt / (hp.s3 - hp.b3)));
    }
    return rep;
}

UnimodalData unimodal_data(const MeasureSpec& spec) {
    UnimodalData u;
    if (const auto* f = std::get_if<RadialStable>(&spec.family())) {
        u.gamma = RadialProfile::power(1.0 / f->c, f->alpha);
        u.c = 1.0;
    } else if (const auto* f = std::get_if<IsotropicUnimodal>(&spec.family())) {
        u.gamma = f->gamma;
        u.c = 0.5 * (f->c_low + f->c_high);
    } else {
        throw DomainError("family must be isotropic unimodal (or radial stable)");
    }
    // W·ν(Z·dy) has kernel W·c·r^{−d}/γ(Z r)
    if (spec.weight() != 1.0 || spec.zoom() != 1.0) {
        u.gamma = u.gamma.scaled(1.0, spec.zoom());
        u.c *= spec.weight();
    }
    return u;
}

double tail_envelope(const MeasureSpec& spec, double t, double x, double a1, double b1) {
    if (!(t > 0.0) || !(x > 0.0)) throw DomainError("envelope needs t > 0 and x != 0");
    if (!(a1 > 0.0 && b1 > 0.0)) throw DomainError("envelope constants must be positive");
    const UnimodalData u = unimodal_data(spec);
    const int d = spec.dim();
    const double g = u.gamma(x);
    if (t <= a1 * g) return t * std::exp(-b1 * t / g) / (std::pow(x, d) * g);
    // a_γ(a₁/t) = 1/γ⁻¹(t/a₁)
    const double ag = 1.0 / inverse_profile(u.gamma)(t / a1);
    return std::pow(ag, d);
}

namespace {

// Radial transform of e^{tψ} for isotropic symmetric measures.
class RadialKernel {
public:
    explicit RadialKernel(const MeasureSpec& spec)
        : dim_(spec.dim()), ev_(polar(spec), 1e-7, 1e7), a_(inverse_profile(w_profile(spec))) {
        const PolarMeasure pm = polar(spec);
        if (!pm.symmetric() || (dim_ == 2 && !pm.isotropic))
            throw DomainError("radial density needs an isotropic symmetric measure");
        rho_ = pm.rho;
    }

    double psi(double r) const { return ev_({r, 0.0}).real(); }
    double j(double r) const { return dim_ == 1 ? rho_(r) : rho_(r) / r; }
    double scale(double t) const { return a_(t); }

    double density(double t, double r) const {
        // far from the bulk a single jump dominates
        if (r > 0.0 && scale(t) < r / 32.0) return t * j(r);
        double top = 1e-7;
        while (-t * psi(top) < 40.0 && top < 1e7) top *= 2.0;
        auto f = [&](double q) {
            const double e = std::exp(t * psi(q));
            if (dim_ == 1) return 2.0 * std::cos(2.0 * kPi * q * r) * e;
            return 2.0 * kPi * q * std::cyl_bessel_j(0.0, 2.0 * kPi * q * r) * e;
        };
        const double width = std::min(top / 64.0, r > 0.0 ? 1.0 / (4.0 * r) : top);
        double sum = numeric::integrate_to_zero(f, width, 1e-12).value;
        for (double lo = width; lo < top; lo += width) sum += GL20::integrate(f, lo, std::min(lo + width, top));
        return sum;
    }

private:
    int dim_;
    SymbolEvaluator ev_;
    RadialProfile a_;
    std::function<double(double)> rho_;
};

}  // namespace

double radial_density(const MeasureSpec& spec, double t, double r) {
    if (!(t > 0.0) || r < 0.0) throw DomainError("radial density needs t > 0 and r >= 0");
    return RadialKernel(spec).density(t, r);
}

EnvelopeFit fit_envelope(const MeasureSpec& spec, const std::vector<double>& t_grid,
                         const std::vector<double>& x_grid, double a1, double b1) {
    if (t_grid.empty() || x_grid.empty()) throw DomainError("envelope fit needs non-empty grids");
    RadialKernel K(spec);
    EnvelopeFit fit;
    for (double t : t_grid)
        for (double x : x_grid) {
            const double v = std::abs(K.density(t, x)) / tail_envelope(spec, t, x, a1, b1);
            if (v > fit.c1) fit = {v, t, x};
        }
    return fit;
}

namespace {

// ∫₀^∞ t^{δ−1}e^{−λt}dt with ℜλ > 0 by the trapezoid rule in ln t.
cplx log_time_integral(double delta, cplx lambda) {
    const double peak = std::log(delta / std::abs(lambda));
    const double lo = peak - 28.0 / delta;  // integrand e^{δs} below 1e-12 of its peak
    const double hi = std::log(40.0 / lambda.real()) + 1.0;
    const double ds = 0.04;
    cplx sum = 0.0;
    for (double s = lo; s <= hi; s += ds) {
        const double t = std::exp(s);
        sum += std::exp(delta * s - lambda * t);
    }
    // below lo the exponential factor is 1 to leading order
    return sum * ds - 0.5 * ds * std::exp(delta * lo - lambda * std::exp(lo)) + std::exp(delta * lo) / delta;
}

struct KernelSpectrum {
    Spectrum khat;
    Spectrum psi_delta;  // ψ^{ν;δ}
    double w = 0.0;
};

KernelSpectrum kernel_spectrum(const MeasureSpec& spec, double delta, const Vec& z, const SpectralGrid& grid) {
    if (!(delta > 0.0 && delta < 2.0)) throw DomainError("exponent delta must lie in (0, 2)");
    const double zn = std::hypot(z[0], spec.dim() == 2 ? z[1] : 0.0);
    if (zn == 0.0) throw DomainError("difference kernel needs z != 0");
    const ORVReport ix = estimate_indices(w_profile(spec));
    const double bound = std::min(1.0 / ix.q1, 1.0 / ix.q2);
    if (!(delta < bound))
        throw DomainError("exponent delta = " + std::to_string(delta) + " not below 1/q1 ∧ 1/q2 = " +
                          std::to_string(bound));
    const bool one = std::abs(delta - 1.0) < 1e-15;
    const MeasureSpec m = one ? spec : symmetrize(spec);
    SymbolEvaluator ev(polar(m), grid.xi_min(), grid.xi_max());
    KernelSpectrum ks;
    ks.w = w_profile(spec)(zn);
    const double wd = std::pow(ks.w, delta);
    ks.khat.assign(grid.size(), 0.0);
    ks.psi_delta.assign(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec xi = grid.frequency(i);
        if (xi[0] == 0.0 && xi[1] == 0.0) continue;
        const cplx psi = ev(xi);
        ks.psi_delta[i] = one ? psi : cplx(-std::pow(std::max(0.0, -psi.real()), delta), 0.0);
        const cplx shift = std::exp(2.0 * kPi * kI * (xi[0] * z[0] + xi[1] * z[1])) - 1.0;
        ks.khat[i] = wd * shift * log_time_integral(delta, -ks.w * psi);
    }
    return ks;
}

}  // namespace

KernelReport difference_kernel(const MeasureSpec& spec, double delta, const Vec& z, const SpectralGrid& grid) {
    const KernelSpectrum ks = kernel_spectrum(spec, delta, z, grid);
    Transform tr(grid);
    KernelReport rep;
    rep.kernel = tr.inverse(ks.khat);
    rep.l1 = l1(grid, rep.kernel);
    rep.w_delta = std::pow(ks.w, delta);
    rep.ratio = rep.l1 / rep.w_delta;
    return rep;
}

ReconstructionReport check_difference_reconstruction(const MeasureSpec& spec, double delta, const Vec& z,
                                                     const SpectralGrid& grid, const Field& u) {
    const KernelSpectrum ks = kernel_spectrum(spec, delta, z, grid);
    Transform tr(grid);
    const Spectrum uh = tr.forward(u);
    Spectrum a(uh.size()), b(uh.size());
    for (std::size_t i = 0; i < uh.size(); ++i) {
        const Vec xi = grid.frequency(i);
        a[i] = (std::exp(2.0 * kPi * kI * (xi[0] * z[0] + xi[1] * z[1])) - 1.0) * uh[i];
        b[i] = ks.khat[i] * ks.psi_delta[i] * uh[i];
    }
    const Field lhs = tr.inverse(a), rhs = tr.inverse(b);
    double ab = 0.0, bb = 0.0, aa = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        ab += lhs[i] * rhs[i];
        bb += rhs[i] * rhs[i];
        aa += lhs[i] * lhs[i];
    }
    if (bb == 0.0 || aa == 0.0) throw DomainError("test field has no content at the shift frequency");
    ReconstructionReport rep;
    rep.c = ab / bb;
    double err = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) err += std::pow(lhs[i] - rep.c * rhs[i], 2);
    rep.rel_error = std::sqrt(err / aa);
    return rep;
}

double chapman_kolmogorov(const MeasureSpec& spec, const CoefficientSpec& coeff, double t1, double t2,
                          const SpectralGrid& grid) {
    if (!(t1 > 0.0 && t2 > t1)) throw DomainError("Chapman-Kolmogorov needs 0 < t1 < t2");
    const DensityField p02 = transition_density(spec, coeff, 0.0, t2, grid);
    const DensityField p01 = transition_density(spec, coeff, 0.0, t1, grid);
    const DensityField p12 = transition_density(spec, coeff, t1, t2, grid);
    Transform tr(grid);
    Spectrum a = tr.forward(p01.values);
    const Spectrum b = tr.forward(p12.values);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    const Field conv = tr.inverse(a);
    double s = 0.0;
    for (std::size_t i = 0; i < conv.size(); ++i) s += std::abs(conv[i] - p02.values[i]);
    return s * grid.cell();
}

GreenReport green_ratio(const MeasureSpec& spec, const std::vector<double>& radii) {
    const UnimodalData u = unimodal_data(spec);
    RadialKernel K(spec);
    const RadialProfile w = w_profile(spec);
    const int d = spec.dim();
    GreenReport rep;
    const double ds = std::log(2.0) / 8.0;
    for (double r : radii) {
        if (!(r > 0.0)) throw DomainError("green ratio needs positive radii");
        // below t_c the first-order term t·j(r) is used
        const double tc = w(r / 32.0);
        double total = 0.5 * tc * tc * K.j(r);
        std::vector<double> f;
        double sum = 0.0, fmax = 0.0;
        bool closed = false;
        for (int i = 0; i < 8 * 160; ++i) {
            const double t = tc * std::exp(i * ds);
            const double v = t * K.density(t, r);
            f.push_back(v);
            fmax = std::max(fmax, std::abs(v));
            sum += (i == 0 ? 0.5 : 1.0) * v * ds;
            if (i >= 24 && v > 0.0 && f[i - 8] > 0.0 && f[i - 16] > 0.0) {
                const double k1 = std::log(f[i - 8] / v) / (8 * ds);
                const double k0 = std::log(f[i - 16] / f[i - 8]) / (8 * ds);
                if (k1 > 1e-3 && std::abs(k1 - k0) < 0.02 * k1) {
                    // power-law tail in t closes as a geometric series in ln t
                    sum += v / k1 - 0.5 * v * ds;
                    closed = true;
                    break;
                }
            }
            if (std::abs(v) < 1e-14 * fmax) {
                closed = true;
                break;
            }
        }
        total += sum;
        const double ratio = closed ? total / (u.gamma(r) / std::pow(r, d)) : std::numeric_limits<double>::infinity();
        rep.radii.push_back(r);
        rep.ratios.push_back(ratio);
        rep.sup = std::max(rep.sup, ratio);
    }
    return rep;
}

}  // namespace levy
