#include "levy/measures.hpp"

#include "levy/error.hpp"
#include "levy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace levy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCircleNodes = 512;

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0) a += 2.0 * kPi;
    return a;
}

bool same_angle(double a, double b) {
    const double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, 2.0 * kPi - d) < 1e-9;
}

// Trapezoid on the circle; exact for trigonometric polynomials of low degree.
template <class F>
double circle_sum(F&& f) {
    const double h = 2.0 * kPi / kCircleNodes;
    double s = 0.0;
    for (int i = 0; i < kCircleNodes; ++i) s += f(i * h);
    return s * h;
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0, 2)");
}

void check_dim(int d) {
    if (d != 1 && d != 2) throw DomainError("only dimensions 1 and 2 are supported");
}

std::vector<SphereAtom> axis_atoms(int dim, double w_pos, double w_neg) {
    (void)dim;
    return {{0.0, w_pos}, {kPi, w_neg}};
}

PolarMeasure base_polar(const MeasureSpec& spec) {
    PolarMeasure pm;
    pm.dim = spec.dim();
    pm.sigma = spec.sigma();
    const int d = spec.dim();
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, RadialStable>) {
                pm.power = true;
                pm.power_coeff = f.c;
                pm.power_alpha = f.alpha;
                if (d == 1) {
                    pm.atoms = axis_atoms(1, 1.0, 1.0);
                } else {
                    pm.uniform = true;
                    pm.isotropic = true;
                    pm.angular = [](double) { return 1.0; };
                }
            } else if constexpr (std::is_same_v<T, Anisotropic>) {
                pm.power = true;
                pm.power_coeff = 1.0;
                pm.power_alpha = f.alpha;
                for (int i = 0; i < d; ++i) {
                    pm.atoms.push_back({0.5 * kPi * i, f.c[i]});
                    pm.atoms.push_back({0.5 * kPi * i + kPi, f.c[i]});
                }
            } else if constexpr (std::is_same_v<T, RadialAngular>) {
                const RadialProfile j = f.j;
                pm.rho = [j, d](double r) { return j(r) * (d == 2 ? r : 1.0); };
                if (j.is_power()) {
                    const double a = -j.params()[1] - d;
                    if (a > 0.0 && a < 2.0) {
                        pm.power = true;
                        pm.power_coeff = j.params()[0];
                        pm.power_alpha = a;
                    }
                }
                const AngularDensity ad = f.a;
                if (f.S.uniform) {
                    if (d == 1) {
                        pm.atoms = axis_atoms(1, ad(0.0), ad(kPi));
                    } else {
                        pm.uniform = true;
                        pm.isotropic = ad.amp == 0.0 || ad.harmonic == 0;
                        pm.angular = ad;
                    }
                } else {
                    for (const auto& at : f.S.atoms)
                        pm.atoms.push_back({wrap_angle(at.angle), at.weight * ad(at.angle)});
                }
            } else {
                const RadialProfile g = f.gamma;
                const double c = 0.5 * (f.c_low + f.c_high);
                pm.rho = [g, c](double r) { return c / (r * g(r)); };
                if (g.is_power() && g.params()[1] > 0.0 && g.params()[1] < 2.0) {
                    pm.power = true;
                    pm.power_coeff = c / g.params()[0];
                    pm.power_alpha = g.params()[1];
                }
                if (d == 1) {
                    pm.atoms = axis_atoms(1, 1.0, 1.0);
                } else {
                    pm.uniform = true;
                    pm.isotropic = true;
                    pm.angular = [](double) { return 1.0; };
                }
            }
        },
        spec.family());
    if (pm.power) {
        const double c = pm.power_coeff, a = pm.power_alpha;
        pm.rho = [c, a](double r) { return c * std::pow(r, -1.0 - a); };
    }
    return pm;
}

double radial_lower(const MeasureSpec& spec) {
    if (auto* f = std::get_if<RadialAngular>(&spec.family())) return f->j.lower() / spec.zoom();
    if (auto* f = std::get_if<IsotropicUnimodal>(&spec.family()))
        return f->gamma.lower() / spec.zoom();
    return 0.0;
}

double radial_upper(const MeasureSpec& spec) {
    if (auto* f = std::get_if<RadialAngular>(&spec.family())) return f->j.upper() / spec.zoom();
    if (auto* f = std::get_if<IsotropicUnimodal>(&spec.family()))
        return f->gamma.upper() / spec.zoom();
    return std::numeric_limits<double>::infinity();
}

}  // namespace

double AngularDensity::operator()(double theta) const {
    if (amp == 0.0 || harmonic == 0) return 1.0;
    return 1.0 - amp * 0.5 * (1.0 - std::cos(harmonic * (theta - phase)));
}

double sphere_area(int dim) { return dim == 1 ? 2.0 : 2.0 * kPi; }

double PolarMeasure::angular_mass() const {
    if (uniform) return circle_sum(angular);
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight;
    return s;
}

Vec PolarMeasure::angular_first_moment() const {
    if (uniform) {
        return {circle_sum([&](double t) { return angular(t) * std::cos(t); }),
                circle_sum([&](double t) { return angular(t) * std::sin(t); })};
    }
    Vec m{0.0, 0.0};
    for (const auto& a : atoms) {
        // exact values on the axes keep the cancellation free of rounding residue
        double c = std::cos(a.angle), s = std::sin(a.angle);
        if (std::abs(c) < 1e-15) c = 0.0;
        if (std::abs(s) < 1e-15) s = 0.0;
        m[0] += a.weight * c;
        m[1] += a.weight * s;
    }
    return m;
}

double PolarMeasure::angular_quadratic(double phi) const {
    if (uniform) {
        return circle_sum([&](double t) {
            const double c = std::cos(t - phi);
            return angular(t) * c * c;
        });
    }
    double s = 0.0;
    for (const auto& a : atoms) {
        double c = std::cos(a.angle - phi);
        if (std::abs(c) < 1e-15) c = 0.0;
        s += a.weight * c * c;
    }
    return s;
}

bool PolarMeasure::symmetric() const {
    if (uniform) {
        double scale = 0.0, diff = 0.0;
        for (int i = 0; i < 64; ++i) {
            const double t = 2.0 * kPi * i / 64.0;
            scale = std::max(scale, std::abs(angular(t)));
            diff = std::max(diff, std::abs(angular(t) - angular(t + kPi)));
        }
        return diff <= 1e-12 * scale;
    }
    double scale = 0.0;
    for (const auto& a : atoms) scale = std::max(scale, a.weight);
    for (const auto& a : atoms) {
        double opposite = 0.0, here = 0.0;
        for (const auto& b : atoms) {
            if (same_angle(b.angle, a.angle + kPi)) opposite += b.weight;
            if (same_angle(b.angle, a.angle)) here += b.weight;
        }
        if (std::abs(opposite - here) > 1e-12 * scale) return false;
    }
    return true;
}

PolarMeasure polar(const MeasureSpec& spec) {
    PolarMeasure pm = base_polar(spec);
    const double W = spec.weight(), Z = spec.zoom();
    if (W != 1.0 || Z != 1.0) {
        if (pm.power) {
            pm.power_coeff *= W * std::pow(Z, -pm.power_alpha);
            const double c = pm.power_coeff, a = pm.power_alpha;
            pm.rho = [c, a](double r) { return c * std::pow(r, -1.0 - a); };
        } else {
            auto inner = pm.rho;
            pm.rho = [inner, W, Z](double r) { return W * Z * inner(Z * r); };
        }
    }
    if (spec.reflected()) {
        if (pm.uniform) {
            auto inner = pm.angular;
            pm.angular = [inner](double t) { return inner(t + kPi); };
        } else {
            for (auto& a : pm.atoms) a.angle = wrap_angle(a.angle + kPi);
        }
    }
    if (spec.symmetrized()) {
        if (pm.uniform) {
            auto inner = pm.angular;
            pm.angular = [inner](double t) { return 0.5 * (inner(t) + inner(t + kPi)); };
        } else {
            std::vector<SphereAtom> both;
            for (const auto& a : pm.atoms) {
                both.push_back({a.angle, 0.5 * a.weight});
                both.push_back({wrap_angle(a.angle + kPi), 0.5 * a.weight});
            }
            pm.atoms = std::move(both);
        }
    }
    return pm;
}

std::string MeasureSpec::family_name() const {
    switch (family_.index()) {
        case 0: return "radial_stable";
        case 1: return "anisotropic";
        case 2: return "radial_angular";
        default: return "isotropic_unimodal";
    }
}

bool MeasureSpec::is_power_law() const {
    const PolarMeasure pm = polar(*this);
    return pm.power && symmetric_;
}

double MeasureSpec::power_alpha() const { return polar(*this).power_alpha; }

bool MeasureSpec::operator==(const MeasureSpec& o) const { return serialize(*this) == serialize(o); }

void MeasureSpec::validate() {
    check_dim(dim_);
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, RadialStable>) {
                check_alpha(f.alpha);
                if (!(f.c > 0.0)) throw DomainError("radial_stable needs c > 0");
                sigma_ = f.alpha;
            } else if constexpr (std::is_same_v<T, Anisotropic>) {
                check_alpha(f.alpha);
                if (static_cast<int>(f.c.size()) != dim_)
                    throw DomainError("anisotropic needs one weight per axis");
                for (double c : f.c)
                    if (!(c > 0.0)) throw DomainError("anisotropic weights must be positive");
                sigma_ = f.alpha;
            } else if constexpr (std::is_same_v<T, RadialAngular>) {
                if (!f.j.valid()) throw DomainError("radial_angular needs a radial profile");
                if (!(f.a.amp >= 0.0 && f.a.amp < 1.0))
                    throw DomainError("angular density amplitude must lie in [0, 1)");
                if (!f.S.uniform) {
                    if (f.S.atoms.empty()) throw DomainError("sphere measure has no atoms");
                    for (const auto& a : f.S.atoms) {
                        if (!(a.weight >= 0.0)) throw DomainError("sphere atom weights must be >= 0");
                        if (dim_ == 1 && !same_angle(a.angle, 0.0) && !same_angle(a.angle, kPi))
                            throw DomainError("in d = 1 sphere atoms must sit at 0 or 180 degrees");
                    }
                }
            } else {
                if (!f.gamma.valid()) throw DomainError("isotropic_unimodal needs a gamma profile");
                if (!(f.c_low > 0.0 && f.c_low <= f.c_high))
                    throw DomainError("isotropic_unimodal needs 0 < c_low <= c_high");
            }
        },
        family_);
    if (!(sigma_ > 0.0 && sigma_ < 2.0)) throw DomainError("sigma must lie in (0, 2)");

    const PolarMeasure pm = polar(*this);
    const double mass = pm.angular_mass();
    if (!(mass > 0.0)) throw DomainError("angular measure has zero mass");
    symmetric_ = pm.symmetric();

    auto rho = pm.rho;
    const auto near = numeric::integrate_to_zero([&](double r) { return r * r * rho(r); }, 1.0, 1e-10);
    const auto far = numeric::integrate_to_infinity(rho, 1.0, 1e-10);
    if (!near.converged || !far.converged || !std::isfinite(near.value + far.value))
        throw DomainError("measure does not integrate |y|^2 ^ 1");

    if (std::abs(sigma_ - 1.0) < 1e-12) {
        const Vec m = pm.angular_first_moment();
        if (std::hypot(m[0], m[1]) > 1e-13 * mass)
            throw DomainError("sigma = 1 requires the first moment over annuli to vanish");
    }

    if (!pm.power) {
        // local divergence exponent of ρ near the origin
        const double r0 = std::max(1e-6, radial_lower(*this));
        const double slope = (std::log(rho(1.1 * r0)) - std::log(rho(r0))) / std::log(1.1);
        const double est = -1.0 - slope;
        if (std::isfinite(est) && std::abs(est - sigma_) > 0.1)
            warnings_.push_back("sigma = " + num(sigma_) + " differs from the estimated exponent " +
                                num(est) + " near the origin");
    }
}

MeasureSpec MeasureSpec::radial_stable(int dim, double alpha, double c) {
    MeasureSpec s;
    s.dim_ = dim;
    s.family_ = RadialStable{dim, alpha, c};
    s.sigma_ = alpha;
    s.validate();
    return s;
}

MeasureSpec MeasureSpec::anisotropic(int dim, double alpha, std::vector<double> c) {
    MeasureSpec s;
    s.dim_ = dim;
    s.family_ = Anisotropic{dim, alpha, std::move(c)};
    s.sigma_ = alpha;
    s.validate();
    return s;
}

MeasureSpec MeasureSpec::radial_angular(int dim, RadialProfile j, AngularDensity a, SphereMeasure S,
                                        double sigma) {
    MeasureSpec s;
    s.dim_ = dim;
    s.family_ = RadialAngular{dim, std::move(j), a, std::move(S)};
    s.sigma_ = sigma;
    s.validate();
    return s;
}

MeasureSpec MeasureSpec::isotropic_unimodal(int dim, RadialProfile gamma, double c_low,
                                            double c_high, double sigma) {
    MeasureSpec s;
    s.dim_ = dim;
    s.family_ = IsotropicUnimodal{dim, std::move(gamma), c_low, c_high};
    s.sigma_ = sigma;
    s.validate();
    return s;
}

double tail_mass(const MeasureSpec& spec, double r) {
    if (!(r > 0.0)) throw DomainError("tail_mass needs r > 0");
    const PolarMeasure pm = polar(spec);
    const double mass = pm.angular_mass();
    if (pm.power) return mass * pm.power_coeff * std::pow(r, -pm.power_alpha) / pm.power_alpha;
    const auto q = numeric::integrate_to_infinity(pm.rho, r, 1e-13);
    if (!q.converged) throw NumericError("tail quadrature did not converge", q.error);
    return mass * q.value;
}

RadialProfile w_profile(const MeasureSpec& spec) {
    const PolarMeasure pm = polar(spec);
    if (pm.power) {
        const double a = pm.power_alpha;
        return RadialProfile::power(a / (pm.angular_mass() * pm.power_coeff), a);
    }
    return RadialProfile::from_function(
        [spec](double r) {
            const double t = tail_mass(spec, r);
            if (!(t > 0.0)) throw DegenerateMeasureError("zero tail mass at r = " + num(r));
            return 1.0 / t;
        },
        "1/tail(" + spec.family_name() + ")", radial_lower(spec), radial_upper(spec));
}

MeasureSpec rescale(const MeasureSpec& spec, double R) {
    if (!(R > 0.0)) throw DomainError("rescale needs R > 0");
    MeasureSpec out = spec;
    if (auto* f = std::get_if<RadialStable>(&out.family_)) {
        f->c = f->alpha / sphere_area(f->dim);
        return out;
    }
    if (auto* f = std::get_if<Anisotropic>(&out.family_)) {
        double sum = 0.0;
        for (double c : f->c) sum += c;
        for (double& c : f->c) c = f->alpha * c / (2.0 * sum);
        return out;
    }
    out.weight_ = spec.weight_ / tail_mass(spec, R);
    out.zoom_ = spec.zoom_ * R;
    return out;
}

MeasureSpec scale(const MeasureSpec& spec, double weight, double R) {
    if (!(R > 0.0) || !(weight > 0.0)) throw DomainError("scale needs positive weight and R");
    MeasureSpec out = spec;
    if (auto* f = std::get_if<RadialStable>(&out.family_)) {
        f->c *= weight * std::pow(R, -f->alpha);
        return out;
    }
    if (auto* f = std::get_if<Anisotropic>(&out.family_)) {
        for (double& c : f->c) c *= weight * std::pow(R, -f->alpha);
        return out;
    }
    out.weight_ = spec.weight_ * weight;
    out.zoom_ = spec.zoom_ * R;
    return out;
}

MeasureSpec symmetrize(const MeasureSpec& spec) {
    if (spec.symmetric_) return spec;
    MeasureSpec out = spec;
    out.symmetrized_ = true;
    out.reflected_ = false;
    out.symmetric_ = true;
    return out;
}

MeasureSpec reflect(const MeasureSpec& spec) {
    if (spec.symmetric_) return spec;
    MeasureSpec out = spec;
    out.reflected_ = !spec.reflected_;
    return out;
}

MomentReport truncated_moments(const MeasureSpec& spec, double alpha1, double alpha2, double R) {
    const MeasureSpec tilde = rescale(spec, R);
    const PolarMeasure pm = polar(tilde);
    const double mass = pm.angular_mass();
    auto rho = pm.rho;
    const auto small = numeric::integrate_to_zero(
        [&](double r) { return std::pow(r, alpha1) * rho(r); }, 1.0, 1e-10);
    if (!small.converged || !std::isfinite(small.value))
        throw MomentDivergenceError("small", "moment of order " + num(alpha1) +
                                                 " diverges at the origin");
    const auto large = numeric::integrate_to_infinity(
        [&](double r) { return std::pow(r, alpha2) * rho(r); }, 1.0, 1e-10);
    if (!large.converged || !std::isfinite(large.value))
        throw MomentDivergenceError("large", "moment of order " + num(alpha2) +
                                                 " diverges at infinity");
    return {mass * small.value, mass * large.value, R, alpha1, alpha2};
}

NondegeneracyReport nondegeneracy(const MeasureSpec& spec, const std::vector<double>& R_grid,
                                  int n_dirs) {
    if (R_grid.empty()) throw DomainError("nondegeneracy needs at least one scale");
    if (spec.dim() == 1 && n_dirs != 2) throw DomainError("d = 1 uses exactly 2 directions");
    if (spec.dim() == 2 && n_dirs < 4) throw DomainError("d = 2 needs at least 4 directions");
    NondegeneracyReport rep;
    rep.value = std::numeric_limits<double>::infinity();
    for (double R : R_grid) {
        const PolarMeasure pm = polar(rescale(spec, R));
        auto rho = pm.rho;
        const auto I = numeric::integrate_to_zero([&](double r) { return r * r * rho(r); }, 1.0, 1e-12);
        const double scale = I.value * pm.angular_mass();
        for (int k = 0; k < n_dirs; ++k) {
            const double phi = 2.0 * kPi * k / n_dirs;
            double v = I.value * pm.angular_quadratic(phi);
            if (v <= 1e-14 * scale) v = 0.0;
            if (v < rep.value) {
                rep.value = v;
                rep.witness_R = R;
                rep.witness_angle = phi;
            }
        }
    }
    rep.degenerate = !(rep.value > 0.0);
    return rep;
}

Vec annulus_first_moment(const MeasureSpec& spec, double r, double R) {
    if (!(r > 0.0 && R > r)) throw DomainError("annulus needs 0 < r < R");
    const PolarMeasure pm = polar(spec);
    auto rho = pm.rho;
    const double radial = numeric::integrate_octaves([&](double s) { return s * rho(s); }, r, R, 2);
    const Vec m = pm.angular_first_moment();
    return {radial * m[0], radial * m[1]};
}

namespace {

RadialProfile parse_profile(const std::string& text, const Config& cfg) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("profile '" + text + "' needs a kind prefix");
    const std::string kind = trim(text.substr(0, colon));
    const std::string rest = trim(text.substr(colon + 1));
    if (kind == "table") return RadialProfile::load_csv(cfg.resolve(rest));
    std::vector<double> p;
    for (const auto& item : split(rest, ',')) p.push_back(parse_double(item, "profile '" + text + "'"));
    try {
        if (kind == "power" && p.size() == 2) return RadialProfile::power(p[0], p[1]);
        if (kind == "power_log" && p.size() == 3) return RadialProfile::power_log(p[0], p[1], p[2]);
        if (kind == "log_cosh" && p.size() == 2) return RadialProfile::log_cosh(p[0], p[1]);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("profile '") + text + "': " + e.what());
    }
    throw ConfigError("unrecognized profile '" + text + "'");
}

std::string profile_text(const RadialProfile& p) {
    if (p.kind() == RadialProfile::Kind::Function)
        throw ConfigError("profile '" + p.description() + "' has no textual form");
    if (p.kind() == RadialProfile::Kind::Tabulated && p.description().rfind("table:", 0) != 0)
        throw ConfigError("in-memory table profiles have no textual form");
    return p.description();
}

constexpr double kDeg = kPi / 180.0;

}  // namespace

MeasureSpec measure_from_config(const Config& cfg) {
    const std::string family = cfg.get("family");
    const int dim = static_cast<int>(cfg.get_int("dim", 1));
    MeasureSpec s;
    {
        if (family == "radial_stable") {
            s = MeasureSpec::radial_stable(dim, cfg.get_double("alpha"), cfg.get_double("c", 1.0));
        } else if (family == "anisotropic") {
            s = MeasureSpec::anisotropic(dim, cfg.get_double("alpha"), cfg.get_list("c"));
        } else if (family == "radial_angular") {
            AngularDensity a;
            a.amp = cfg.get_double("angular_amp", 0.0);
            a.harmonic = static_cast<int>(cfg.get_int("angular_harmonic", 0));
            a.phase = cfg.get_double("angular_phase", 0.0) * kDeg;
            SphereMeasure S;
            if (cfg.has("atoms")) {
                S.uniform = false;
                for (const auto& item : split(cfg.get("atoms"), ',')) {
                    const auto parts = split(item, ':');
                    if (parts.size() != 2) throw ConfigError("atoms entry '" + item + "' must be angle:weight");
                    S.atoms.push_back({parse_double(parts[0], "atom angle") * kDeg,
                                       parse_double(parts[1], "atom weight")});
                }
            }
            s = MeasureSpec::radial_angular(dim, parse_profile(cfg.get("profile"), cfg), a, S,
                                            cfg.get_double("sigma"));
        } else if (family == "isotropic_unimodal") {
            RadialProfile g;
            if (cfg.has("gamma_table"))
                g = RadialProfile::load_csv(cfg.resolve(cfg.get("gamma_table")));
            else
                g = parse_profile(cfg.get("gamma"), cfg);
            s = MeasureSpec::isotropic_unimodal(dim, g, cfg.get_double("c_low", 1.0),
                                                cfg.get_double("c_high", cfg.get_double("c_low", 1.0)),
                                                cfg.get_double("sigma"));
        } else {
            throw ConfigError("unknown measure family '" + family + "'");
        }
    }
    if (cfg.has("sigma") && (family == "radial_stable" || family == "anisotropic") &&
        std::abs(cfg.get_double("sigma") - s.sigma()) > 1e-12)
        throw DomainError("sigma of a stable-type family must equal alpha");
    s.weight_ = cfg.get_double("weight", 1.0);
    s.zoom_ = cfg.get_double("zoom", 1.0);
    if (!(s.weight_ > 0.0 && s.zoom_ > 0.0)) throw DomainError("weight and zoom must be positive");
    if (cfg.get_bool("symmetrized", false)) s = symmetrize(s);
    if (cfg.get_bool("reflected", false)) s = reflect(s);
    return s;
}

MeasureSpec load_measure(const std::string& path) { return measure_from_config(Config::load(path)); }

std::string serialize(const MeasureSpec& spec) {
    std::ostringstream os;
    os << "family = " << spec.family_name() << "\n";
    os << "dim = " << spec.dim() << "\n";
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, RadialStable>) {
                os << "alpha = " << num(f.alpha) << "\nc = " << num(f.c) << "\n";
            } else if constexpr (std::is_same_v<T, Anisotropic>) {
                os << "alpha = " << num(f.alpha) << "\nc = ";
                for (std::size_t i = 0; i < f.c.size(); ++i) os << (i ? ", " : "") << num(f.c[i]);
                os << "\n";
            } else if constexpr (std::is_same_v<T, RadialAngular>) {
                os << "profile = " << profile_text(f.j) << "\n";
                if (f.a.amp != 0.0) {
                    os << "angular_amp = " << num(f.a.amp) << "\nangular_harmonic = " << f.a.harmonic
                       << "\nangular_phase = " << num(f.a.phase / kDeg) << "\n";
                }
                if (!f.S.uniform) {
                    os << "atoms = ";
                    for (std::size_t i = 0; i < f.S.atoms.size(); ++i)
                        os << (i ? ", " : "") << num(f.S.atoms[i].angle / kDeg) << ":"
                           << num(f.S.atoms[i].weight);
                    os << "\n";
                }
            } else {
                os << "gamma = " << profile_text(f.gamma) << "\nc_low = " << num(f.c_low)
                   << "\nc_high = " << num(f.c_high) << "\n";
            }
        },
        spec.family());
    os << "sigma = " << num(spec.sigma()) << "\n";
    if (spec.weight() != 1.0) os << "weight = " << num(spec.weight()) << "\n";
    if (spec.zoom() != 1.0) os << "zoom = " << num(spec.zoom()) << "\n";
    if (spec.symmetrized()) os << "symmetrized = true\n";
    if (spec.reflected()) os << "reflected = true\n";
    return os.str();
}

}  // namespace levy
