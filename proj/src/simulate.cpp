#include "levy/simulate.hpp"

#include "levy/error.hpp"
#include "levy/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace levy {

namespace {

constexpr double kPi = std::numbers::pi;
using GL20 = boost::math::quadrature::gauss<double, 20>;

double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

void check_plan(const SamplePlan& p) {
    if (!(p.eps > 0.0)) throw DomainError("truncation radius eps must be positive");
    if (p.n < 1) throw DomainError("sample count must be at least 1");
    if (!(p.t > p.s) || p.s < 0.0) throw DomainError("sampling needs 0 <= s < t");
    if (p.coeff.x_dependent()) throw DomainError("path simulation needs m = m(t, y)");
}

// Radii from ρ restricted to (eps, ∞).
class RadialSampler {
public:
    RadialSampler(const PolarMeasure& pm, double eps) : eps_(eps) {
        if (pm.power) {
            power_ = true;
            alpha_ = pm.power_alpha;
            mass_ = pm.power_coeff * std::pow(eps, -alpha_) / alpha_;
            return;
        }
        // tail G(r) = ∫_r^∞ρ on a 32-per-octave grid, accumulated from the far end
        const double step = std::log(2.0) / 32.0;
        std::vector<double> lr{std::log(eps)};
        std::vector<double> pieces;
        double total = 0.0;
        for (int i = 0; i < 32 * 400; ++i) {
            const double a = std::exp(lr.back()), b = std::exp(lr.back() + step);
            const double q = GL20::integrate(pm.rho, a, b);
            pieces.push_back(q);
            lr.push_back(lr.back() + step);
            total += q;
            if (i > 64 && q < 1e-16 * total) break;
        }
        const double far = numeric::integrate_to_infinity(pm.rho, std::exp(lr.back()), 1e-12).value;
        std::vector<double> G(lr.size());
        G.back() = far;
        for (std::size_t i = pieces.size(); i-- > 0;) G[i] = G[i + 1] + pieces[i];
        mass_ = G.front();
        if (!(mass_ > 0.0) || !std::isfinite(mass_)) throw DegenerateMeasureError("no mass beyond eps");
        // store ln(G/mass), decreasing in ln r
        for (std::size_t i = 0; i < G.size(); ++i) {
            if (!(G[i] > 0.0)) break;
            lr_.push_back(lr[i]);
            lg_.push_back(std::log(G[i] / mass_));
        }
        far_slope_ = lr_.size() > 1 ? (lg_.back() - lg_[lg_.size() - 2]) / (lr_.back() - lr_[lr_.size() - 2]) : -1.0;
    }

    double mass() const { return mass_; }

    /// Radius with G(r)/G(eps) = v, v ∈ (0, 1].
    double operator()(double v) const {
        if (power_) {
            if (alpha_ == 1.0) return eps_ / v;
            return eps_ * std::pow(v, -1.0 / alpha_);
        }
        const double lv = std::log(v);
        if (lv <= lg_.back()) return std::exp(lr_.back() + (lv - lg_.back()) / far_slope_);
        // lg_ decreasing: find the bracketing cell
        const auto it = std::lower_bound(lg_.begin(), lg_.end(), lv, std::greater<double>());
        const std::size_t i = std::max<std::size_t>(1, it - lg_.begin());
        const double w = (lv - lg_[i - 1]) / (lg_[i] - lg_[i - 1]);
        return std::exp(lr_[i - 1] + w * (lr_[i] - lr_[i - 1]));
    }

private:
    double eps_;
    bool power_ = false;
    double alpha_ = 1.0;
    double mass_ = 0.0;
    double far_slope_ = -1.0;
    std::vector<double> lr_, lg_;
};

// Directions from the angular measure A.
class AngularSampler {
public:
    explicit AngularSampler(const PolarMeasure& pm) : dim_(pm.dim) {
        if (!pm.atoms.empty() && !pm.uniform) {
            double sum = 0.0;
            for (const auto& a : pm.atoms) {
                sum += a.weight;
                cdf_.push_back(sum);
                dirs_.push_back(direction(a.angle));
            }
            for (double& c : cdf_) c /= sum;
            halves_ = pm.atoms.size() == 2 && pm.atoms[0].weight == pm.atoms[1].weight;
            return;
        }
        isotropic_ = pm.isotropic;
        density_ = pm.angular;
        if (!isotropic_) {
            for (int i = 0; i < 4096; ++i) bound_ = std::max(bound_, density_(2.0 * kPi * i / 4096.0));
            bound_ *= 1.01;
        }
    }

    /// Unit vector; `bits` is a spent draw whose lowest bit is still unused.
    template <class Engine>
    Vec operator()(Engine& eng, std::uint64_t bits) const {
        if (!cdf_.empty()) {
            if (cdf_.size() == 1) return dirs_[0];
            if (halves_) return dirs_[bits & 1u];
            const double u = to_unit(eng());
            const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
            return dirs_[std::min<std::size_t>(it - cdf_.begin(), dirs_.size() - 1)];
        }
        for (;;) {
            const double th = 2.0 * kPi * to_unit(eng());
            if (isotropic_ || to_unit(eng()) * bound_ <= density_(th)) return direction(th);
        }
    }

    Vec direction(double th) const {
        if (dim_ == 1) return {std::cos(th) > 0.0 ? 1.0 : -1.0, 0.0};
        return {std::cos(th), std::sin(th)};
    }

private:
    int dim_;
    std::vector<double> cdf_;
    std::vector<Vec> dirs_;
    bool halves_ = false;
    bool isotropic_ = false;
    std::function<double(double)> density_;
    double bound_ = 0.0;
};

}  // namespace

double expected_jumps(const SamplePlan& plan) {
    check_plan(plan);
    return (plan.t - plan.s) * plan.coeff.K() * tail_mass(plan.spec, plan.eps);
}

Vec compensator_drift(const SamplePlan& plan) {
    check_plan(plan);
    const PolarMeasure pm = polar(plan.spec);
    const double sigma = pm.sigma;
    if (sigma < 1.0) return {0.0, 0.0};
    const double top = sigma == 1.0 ? 1.0 : std::numeric_limits<double>::infinity();
    if (plan.eps >= top) return {0.0, 0.0};

    // time nodes: one 20-point Gauss rule per unit length
    const int pieces = std::max(1, static_cast<int>(std::ceil(plan.t - plan.s)));
    std::vector<double> tn, tw;
    {
        const auto& ab = GL20::abscissa();
        const auto& wt = GL20::weights();
        const double h = (plan.t - plan.s) / pieces;
        for (int p = 0; p < pieces; ++p) {
            const double mid = plan.s + (p + 0.5) * h;
            for (std::size_t i = 0; i < ab.size(); ++i) {
                tn.push_back(mid + 0.5 * h * ab[i]);
                tw.push_back(0.5 * h * wt[i]);
                if (ab[i] != 0.0) {
                    tn.push_back(mid - 0.5 * h * ab[i]);
                    tw.push_back(0.5 * h * wt[i]);
                }
            }
        }
    }
    std::vector<double> an, aw;
    if (!pm.atoms.empty() && !pm.uniform) {
        for (const auto& a : pm.atoms) {
            an.push_back(a.angle);
            aw.push_back(a.weight);
        }
    } else {
        for (int i = 0; i < 256; ++i) {
            an.push_back(2.0 * kPi * i / 256.0);
            aw.push_back(2.0 * kPi / 256.0 * pm.angular(an.back()));
        }
    }
    Vec drift{0.0, 0.0};
    for (int c = 0; c < (pm.dim == 1 ? 1 : 2); ++c) {
        auto radial = [&](double r) {
            double acc = 0.0;
            for (std::size_t k = 0; k < an.size(); ++k) {
                const double z = c == 0 ? std::cos(an[k]) : std::sin(an[k]);
                if (z == 0.0) continue;
                const Vec y{r * std::cos(an[k]), pm.dim == 1 ? 0.0 : r * std::sin(an[k])};
                double m = 0.0;
                for (std::size_t q = 0; q < tn.size(); ++q) m += tw[q] * plan.coeff(tn[q], {0.0, 0.0}, y);
                acc += aw[k] * z * m;
            }
            return r * pm.rho(r) * acc;
        };
        double v = 0.0;
        if (std::isfinite(top)) {
            v = numeric::integrate_octaves(radial, plan.eps, top, 2);
        } else {
            v = (plan.eps < 1.0 ? numeric::integrate_octaves(radial, plan.eps, 1.0, 2) : 0.0) +
                numeric::integrate_to_infinity(radial, std::max(1.0, plan.eps), 1e-10).value;
        }
        drift[c] = -v;
    }
    return drift;
}

double truncation_bias(const SamplePlan& plan, const Vec& xi) {
    check_plan(plan);
    const PolarMeasure pm = polar(plan.spec);
    double radial = 0.0;
    if (pm.power) {
        radial = pm.power_coeff * std::pow(plan.eps, 2.0 - pm.power_alpha) / (2.0 - pm.power_alpha);
    } else {
        radial = numeric::integrate_to_zero([&](double r) { return r * r * pm.rho(r); }, plan.eps, 1e-10).value;
    }
    const double norm2 = xi[0] * xi[0] + xi[1] * xi[1];
    if (norm2 == 0.0) return 0.0;
    const double ang = pm.angular_quadratic(std::atan2(xi[1], xi[0]));
    return (plan.t - plan.s) * plan.coeff.K() * 4.0 * kPi * kPi * norm2 * radial * ang;
}

std::vector<Vec> sample_increments(const SamplePlan& plan) {
    const double lambda = expected_jumps(plan);
    if (lambda > 1e8)
        throw DomainError("expected jump count " + std::to_string(lambda) + " per path exceeds 1e8: increase eps");
    const PolarMeasure pm = polar(plan.spec);
    const RadialSampler radius(pm, plan.eps);
    const AngularSampler angle(pm);
    const Vec drift = compensator_drift(plan);
    const double K = plan.coeff.K();
    // m ≡ K accepts every proposal
    const bool thin = plan.coeff.form() != CoefficientSpec::Form::Constant || plan.coeff.k() != K;
    const double span = plan.t - plan.s;

    std::vector<Vec> out(plan.n);
    for (std::size_t j = 0; j < plan.n; ++j) {
        std::seed_seq seq{static_cast<std::uint32_t>(plan.seed), static_cast<std::uint32_t>(plan.seed >> 32),
                          static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(std::uint64_t(j) >> 32)};
        std::mt19937_64 eng(seq);
        std::poisson_distribution<long long> count(lambda);
        const long long jumps = count(eng);
        double x0 = 0.0, x1 = 0.0;
        for (long long k = 0; k < jumps; ++k) {
            const std::uint64_t bits = eng();
            // 1 − U ∈ (0, 1]
            const double v = 1.0 - to_unit(bits);
            const double r = radius(v);
            const Vec z = angle(eng, bits);
            const Vec y{r * z[0], r * z[1]};
            if (thin) {
                const double tau = plan.s + span * to_unit(eng());
                if (to_unit(eng()) * K > plan.coeff(tau, {0.0, 0.0}, y)) continue;
            }
            x0 += y[0];
            x1 += y[1];
        }
        out[j] = {x0 + drift[0], pm.dim == 1 ? 0.0 : x1 + drift[1]};
    }
    return out;
}

std::vector<std::complex<double>> empirical_cf(const std::vector<Vec>& samples, const std::vector<Vec>& xi_set) {
    if (samples.empty()) throw DomainError("empirical CF needs samples");
    std::vector<std::complex<double>> out;
    out.reserve(xi_set.size());
    for (const Vec& xi : xi_set) {
        double c = 0.0, s = 0.0;
        for (const Vec& x : samples) {
            const double ph = 2.0 * kPi * (xi[0] * x[0] + xi[1] * x[1]);
            c += std::cos(ph);
            s += std::sin(ph);
        }
        out.emplace_back(c / samples.size(), s / samples.size());
    }
    return out;
}

}  // namespace levy
