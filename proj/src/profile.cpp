#include "levy/profile.hpp"

#include "levy/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace levy {

namespace {

std::string fmt_num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// ln cosh √r without overflow for large r.
double log_cosh_sqrt(double r) {
    const double s = std::sqrt(r);
    if (s > 20.0) return s - std::log(2.0) + std::log1p(std::exp(-2.0 * s));
    return std::log(std::cosh(s));
}

}  // namespace

RadialProfile RadialProfile::power(double coeff, double exponent) {
    if (!(coeff > 0.0)) throw DomainError("power profile needs a positive coefficient");
    RadialProfile p;
    p.kind_ = Kind::Power;
    p.params_ = {coeff, exponent, 0.0};
    p.eval_ = [coeff, exponent](double r) { return coeff * std::pow(r, exponent); };
    p.description_ = "power:" + fmt_num(coeff) + "," + fmt_num(exponent);
    return p;
}

RadialProfile RadialProfile::power_log(double coeff, double exponent, double log_exponent) {
    if (!(coeff > 0.0)) throw DomainError("power_log profile needs a positive coefficient");
    RadialProfile p;
    p.kind_ = Kind::PowerLog;
    p.params_ = {coeff, exponent, log_exponent};
    p.eval_ = [coeff, exponent, log_exponent](double r) {
        return coeff * std::pow(r, exponent) * std::pow(std::log1p(r), log_exponent);
    };
    p.description_ = "power_log:" + fmt_num(coeff) + "," + fmt_num(exponent) + "," +
                     fmt_num(log_exponent);
    return p;
}

RadialProfile RadialProfile::log_cosh(double coeff, double exponent) {
    if (!(coeff > 0.0)) throw DomainError("log_cosh profile needs a positive coefficient");
    RadialProfile p;
    p.kind_ = Kind::LogCosh;
    p.params_ = {coeff, exponent, 0.0};
    p.eval_ = [coeff, exponent](double r) {
        // small-r branch keeps full precision: ln cosh √r = r/2 - r²/12 + ...
        const double base = r < 1e-6 ? 0.5 * r - r * r / 12.0 : log_cosh_sqrt(r);
        return coeff * std::pow(base, exponent);
    };
    p.description_ = "log_cosh:" + fmt_num(coeff) + "," + fmt_num(exponent);
    return p;
}

RadialProfile RadialProfile::tabulated(std::vector<double> r, std::vector<double> v) {
    if (r.size() != v.size() || r.size() < 2)
        throw DomainError("tabulated profile needs at least two (r, value) pairs");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0.0) || !(v[i] > 0.0))
            throw DomainError("tabulated profile must be positive with r > 0");
        if (i > 0 && !(r[i] > r[i - 1]))
            throw DomainError("tabulated profile radii must be strictly increasing");
    }
    auto tab = std::make_shared<Table>();
    tab->r = std::move(r);
    tab->v = std::move(v);
    for (std::size_t i = 0; i < tab->r.size(); ++i) {
        tab->log_r.push_back(std::log(tab->r[i]));
        tab->log_v.push_back(std::log(tab->v[i]));
    }
    RadialProfile p;
    p.kind_ = Kind::Tabulated;
    p.table_ = tab;
    p.lower_ = tab->r.front();
    p.upper_ = tab->r.back();
    p.eval_ = [tab](double x) {
        const double lx = std::log(x);
        const auto& lr = tab->log_r;
        const auto& lv = tab->log_v;
        std::size_t i;
        if (lx <= lr.front()) {
            i = 0;
        } else if (lx >= lr.back()) {
            i = lr.size() - 2;
        } else {
            i = static_cast<std::size_t>(std::upper_bound(lr.begin(), lr.end(), lx) - lr.begin()) - 1;
        }
        const double slope = (lv[i + 1] - lv[i]) / (lr[i + 1] - lr[i]);
        return std::exp(lv[i] + slope * (lx - lr[i]));
    };
    p.description_ = "table(" + std::to_string(tab->r.size()) + " nodes)";
    return p;
}

RadialProfile RadialProfile::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open profile table '" + path + "'");
    std::vector<double> r, v;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a >> b)) {
            if (lineno == 1) continue;  // header
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two numbers");
        }
        r.push_back(a);
        v.push_back(b);
    }
    auto p = tabulated(std::move(r), std::move(v));
    p.description_ = "table:" + path;
    return p;
}

RadialProfile RadialProfile::from_function(std::function<double(double)> f, std::string description,
                                           double lower, double upper) {
    RadialProfile p;
    p.kind_ = Kind::Function;
    p.eval_ = std::move(f);
    p.description_ = std::move(description);
    p.lower_ = lower;
    p.upper_ = upper;
    return p;
}

const std::vector<double>& RadialProfile::table_r() const {
    static const std::vector<double> empty;
    return table_ ? table_->r : empty;
}

const std::vector<double>& RadialProfile::table_v() const {
    static const std::vector<double> empty;
    return table_ ? table_->v : empty;
}

RadialProfile RadialProfile::scaled(double factor, double zoom) const {
    if (factor == 1.0 && zoom == 1.0) return *this;
    if (kind_ == Kind::Power) {
        return power(factor * params_[0] * std::pow(zoom, params_[1]), params_[1]);
    }
    RadialProfile p = *this;
    auto inner = eval_;
    p.eval_ = [inner, factor, zoom](double r) { return factor * inner(zoom * r); };
    p.kind_ = Kind::Function;
    p.lower_ = lower_ / zoom;
    p.upper_ = upper_ / zoom;
    p.description_ = fmt_num(factor) + "*[" + description_ + "](" + fmt_num(zoom) + "r)";
    return p;
}

}  // namespace levy
