#include "levy/coefficient.hpp"

#include "levy/error.hpp"
#include "levy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace levy {

namespace {

constexpr double kPi = std::numbers::pi;

double sup_abs(const Harmonic& h) { return std::max(std::abs(h.lower()), std::abs(h.upper())); }

std::string harmonic_text(const Harmonic& h, bool vec) {
    std::ostringstream os;
    os.precision(17);
    os << h.base << "," << h.amp << "," << h.freq[0] << ",";
    if (vec) os << h.freq[1] << ",";
    os << h.phase;
    return os.str();
}

Harmonic parse_harmonic(const Config& cfg, const std::string& key, bool vec) {
    Harmonic h;
    if (!cfg.has(key)) return h;
    const auto v = cfg.get_list(key);
    if (v.size() == 4) {
        h = {v[0], v[1], {v[2], 0.0}, v[3]};
    } else if (vec && v.size() == 5) {
        h = {v[0], v[1], {v[2], v[3]}, v[4]};
    } else {
        throw ConfigError("key '" + key + "' needs base,amp,freq,phase" +
                          std::string(vec ? " (or base,amp,fx,fy,phase)" : ""));
    }
    return h;
}

}  // namespace

double Harmonic::operator()(double arg) const {
    if (amp == 0.0) return base;
    return base + amp * std::cos(2.0 * kPi * freq[0] * arg + phase);
}

double Harmonic::at(const Vec& x) const {
    if (amp == 0.0) return base;
    return base + amp * std::cos(2.0 * kPi * (freq[0] * x[0] + freq[1] * x[1]) + phase);
}

double Harmonic::lower() const {
    if (amp == 0.0) return base;
    if (freq[0] == 0.0 && freq[1] == 0.0) return base + amp * std::cos(phase);
    return base - std::abs(amp);
}

double Harmonic::upper() const {
    if (amp == 0.0) return base;
    if (freq[0] == 0.0 && freq[1] == 0.0) return base + amp * std::cos(phase);
    return base + std::abs(amp);
}

double Harmonic::integral(double s, double t) const {
    if (amp == 0.0) return base * (t - s);
    if (freq[0] == 0.0) return (base + amp * std::cos(phase)) * (t - s);
    const double w = 2.0 * kPi * freq[0];
    return base * (t - s) + amp / w * (std::sin(w * t + phase) - std::sin(w * s + phase));
}

double CoefficientTerm::y_factor(double radius, double angle) const {
    return r(std::log(radius)) * a(angle / (2.0 * kPi));
}

double CoefficientTerm::eval(double time, const Vec& pos, const Vec& y) const {
    const double radius = std::hypot(y[0], y[1]);
    const double angle = std::atan2(y[1], y[0]);
    return t(time) * x.at(pos) * y_factor(radius, angle);
}

CoefficientSpec CoefficientSpec::constant(double value) {
    if (!(value > 0.0)) throw DomainError("coefficient bounds: constant must be positive");
    CoefficientSpec c;
    c.form_ = Form::Constant;
    CoefficientTerm term;
    term.t.base = value;
    c.terms_ = {term};
    c.compute_bounds(0.0, 0.0);
    return c;
}

CoefficientSpec CoefficientSpec::time_separable(Harmonic mt, Harmonic mr, Harmonic ma) {
    CoefficientSpec c;
    c.form_ = Form::TimeSeparable;
    CoefficientTerm term;
    term.t = mt;
    term.r = mr;
    term.a = ma;
    c.terms_ = {term};
    c.compute_bounds(0.0, 0.0);
    return c;
}

CoefficientSpec CoefficientSpec::expression(std::vector<CoefficientTerm> terms, double k, double K,
                                            double beta) {
    if (terms.empty()) throw DomainError("coefficient needs at least one term");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("Hoelder order beta must lie in (0, 1)");
    CoefficientSpec c;
    c.form_ = Form::Expression;
    c.terms_ = std::move(terms);
    c.beta_ = beta;
    c.compute_bounds(k, K);
    return c;
}

void CoefficientSpec::compute_bounds(double k_given, double K_given) {
    double lo, hi;
    if (terms_.size() == 1) {
        // product of factor ranges: extremes sit at interval endpoints
        lo = 1.0;
        hi = 1.0;
        const auto& tm = terms_[0];
        for (const Harmonic* h : {&tm.t, &tm.x, &tm.r, &tm.a}) {
            const double c[4] = {lo * h->lower(), lo * h->upper(), hi * h->lower(), hi * h->upper()};
            lo = *std::min_element(c, c + 4);
            hi = *std::max_element(c, c + 4);
        }
    } else {
        // lattice spot check over one period of the slowest factor
        auto span = [&](auto get) {
            double f = 0.0;
            for (const auto& tm : terms_) {
                const Harmonic& h = get(tm);
                if (h.amp == 0.0) continue;
                const double m = std::hypot(h.freq[0], h.freq[1]);
                if (m > 0.0 && (f == 0.0 || m < f)) f = m;
            }
            return f > 0.0 ? 1.0 / f : 1.0;
        };
        const double Tt = span([](const CoefficientTerm& c) -> const Harmonic& { return c.t; });
        const double Tx = span([](const CoefficientTerm& c) -> const Harmonic& { return c.x; });
        const double Tr = span([](const CoefficientTerm& c) -> const Harmonic& { return c.r; });
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        for (int it = 0; it <= 16; ++it)
            for (int ix = 0; ix < 17; ++ix)
                for (int iy = 0; iy < 17; ++iy)
                    for (int ir = 0; ir <= 40; ++ir)
                        for (int ia = 0; ia < 8; ++ia) {
                            const double t = Tt * it / 16.0;
                            const Vec x{Tx * ix / 17.0, Tx * iy / 17.0};
                            const double lr = Tr * (ir / 40.0 - 0.5) * 2.0;
                            const double ang = ia / 8.0;
                            double m = 0.0;
                            for (const auto& tm : terms_)
                                m += tm.t(t) * tm.x.at(x) * tm.r(lr) * tm.a(ang);
                            lo = std::min(lo, m);
                            hi = std::max(hi, m);
                        }
    }
    if (!(lo > 0.0)) throw DomainError("coefficient bounds: m is not bounded below by a positive k");
    if (k_given > 0.0) {
        if (lo < k_given * (1.0 - 1e-12))
            throw DomainError("coefficient bounds: sampled value " + std::to_string(lo) +
                              " below k = " + std::to_string(k_given));
        lo = k_given;
    }
    if (K_given > 0.0) {
        if (hi > K_given * (1.0 + 1e-12))
            throw DomainError("coefficient bounds: sampled value " + std::to_string(hi) +
                              " above K = " + std::to_string(K_given));
        hi = K_given;
    }
    k_ = lo;
    K_ = hi;
}

double CoefficientSpec::operator()(double t, const Vec& x, const Vec& y) const {
    double m = 0.0;
    for (const auto& term : terms_) m += term.eval(t, x, y);
    return m;
}

bool CoefficientSpec::x_dependent() const {
    for (const auto& term : terms_)
        if (!term.x.constant()) return true;
    return false;
}

bool CoefficientSpec::t_dependent() const {
    for (const auto& term : terms_)
        if (!term.t.constant()) return true;
    return false;
}

bool CoefficientSpec::y_dependent() const {
    for (const auto& term : terms_)
        if (!term.r.constant() || !term.a.constant()) return true;
    return false;
}

double CoefficientSpec::kappa(double tau) const {
    double k = 0.0;
    for (const auto& term : terms_) {
        if (term.x.constant()) continue;
        const double f = std::hypot(term.x.freq[0], term.x.freq[1]);
        const double a = std::abs(term.x.amp);
        k += sup_abs(term.t) * sup_abs(term.r) * sup_abs(term.a) *
             std::min(2.0 * a, 2.0 * kPi * f * a * tau);
    }
    return k;
}

double CoefficientSpec::kappa_integral(int dim) const {
    if (!x_dependent()) return 0.0;
    const double b = beta_;
    const auto q = numeric::integrate_to_zero(
        [&](double r) { return kappa(r) * std::pow(r, -1.0 - b); }, 1.0, 1e-10);
    if (!q.converged) return std::numeric_limits<double>::infinity();
    return sphere_area(dim) * q.value;
}

CoefficientSpec CoefficientSpec::rescale_y(double R) const {
    if (!(R > 0.0)) throw DomainError("rescale needs R > 0");
    CoefficientSpec c = *this;
    for (auto& term : c.terms_) term.r.phase += 2.0 * kPi * term.r.freq[0] * std::log(R);
    return c;
}

CoefficientSpec CoefficientSpec::frozen_at(const Vec& x) const {
    CoefficientSpec c = *this;
    for (auto& term : c.terms_) term.x = Harmonic{term.x.at(x), 0.0, {0.0, 0.0}, 0.0};
    return c;
}

CoefficientSpec CoefficientSpec::with_x_constants(const std::vector<double>& values) const {
    if (values.size() != terms_.size()) throw DomainError("one x value per coefficient term is required");
    CoefficientSpec c = *this;
    for (std::size_t k = 0; k < values.size(); ++k) c.terms_[k].x = Harmonic{values[k], 0.0, {0.0, 0.0}, 0.0};
    return c;
}

std::string CoefficientSpec::describe() const {
    std::ostringstream os;
    os << (form_ == Form::Constant ? "constant" : form_ == Form::TimeSeparable ? "time_separable"
                                                                                : "expression");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        os << " | term" << i + 1 << " t=" << harmonic_text(t.t, false)
           << " x=" << harmonic_text(t.x, true) << " r=" << harmonic_text(t.r, false)
           << " a=" << harmonic_text(t.a, false);
    }
    os << " | k=" << k_ << " K=" << K_;
    return os.str();
}

PolarMeasure weighted_polar(const PolarMeasure& base, const CoefficientTerm& term) {
    PolarMeasure pm = base;
    if (!term.r.constant()) {
        auto inner = pm.rho;
        const Harmonic h = term.r;
        pm.rho = [inner, h](double r) { return inner(r) * h(std::log(r)); };
        pm.power = false;
    } else if (term.r.lower() != 1.0) {
        const double v = term.r.lower();
        auto inner = pm.rho;
        pm.rho = [inner, v](double r) { return v * inner(r); };
        pm.power_coeff *= v;
    }
    const Harmonic ha = term.a;
    if (!ha.constant() || ha.lower() != 1.0) {
        if (pm.uniform) {
            auto inner = pm.angular;
            pm.angular = [inner, ha](double t) { return inner(t) * ha(t / (2.0 * kPi)); };
            if (!ha.constant()) pm.isotropic = false;
        } else {
            for (auto& at : pm.atoms) at.weight *= ha(at.angle / (2.0 * kPi));
        }
    }
    return pm;
}

CoefficientSpec coefficient_from_config(const Config& cfg) {
    const std::string form = cfg.get("form", "constant");
    if (form == "constant") return CoefficientSpec::constant(cfg.get_double("value", 1.0));
    if (form == "time_separable")
        return CoefficientSpec::time_separable(parse_harmonic(cfg, "t", false),
                                               parse_harmonic(cfg, "r", false),
                                               parse_harmonic(cfg, "a", false));
    if (form == "expression") {
        std::vector<CoefficientTerm> terms;
        for (int i = 1;; ++i) {
            const std::string p = "term" + std::to_string(i) + ".";
            if (!cfg.has(p + "t") && !cfg.has(p + "x") && !cfg.has(p + "r") && !cfg.has(p + "a"))
                break;
            CoefficientTerm term;
            term.t = parse_harmonic(cfg, p + "t", false);
            term.x = parse_harmonic(cfg, p + "x", true);
            term.r = parse_harmonic(cfg, p + "r", false);
            term.a = parse_harmonic(cfg, p + "a", false);
            terms.push_back(term);
        }
        if (terms.empty()) throw ConfigError("expression coefficient needs term1.* keys");
        return CoefficientSpec::expression(terms, cfg.get_double("k", 0.0), cfg.get_double("K", 0.0),
                                           cfg.get_double("beta", 0.5));
    }
    throw ConfigError("unknown coefficient form '" + form + "'");
}

}  // namespace levy
