#include "levy/orv.hpp"

#include "levy/error.hpp"
#include "levy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace levy {

namespace {

constexpr int kLadderStart = 8;
constexpr int kLadderEnd = 20;
constexpr int kXRange = 6;
constexpr int kMinLadder = 6;
constexpr int kKaramataOctaves = 60;
constexpr double kSlack = 1e-9;

double checked(const RadialProfile& w, double r) {
    const double v = w(r);
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError("profile is not positive at r = " + std::to_string(r));
    return v;
}

double ls_slope(const std::vector<double>& lx, const std::vector<double>& ly) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int ladder_length(double bound, bool at_zero) {
    if (at_zero && bound <= 0.0) return kLadderEnd;
    if (!at_zero && std::isinf(bound)) return kLadderEnd;
    const double octaves = at_zero ? std::floor(-std::log2(bound)) : std::floor(std::log2(bound));
    return std::min<int>(kLadderEnd, static_cast<int>(octaves) - kXRange);
}

struct Side {
    bool zero;       // x ∈ (0, 1] versus [1, ∞)
    bool outer;      // integral reaches 0 (or ∞) rather than 1
    int beta_sign;   // required sign of β
};

Side side_of(KaramataRegime r) {
    switch (r) {
        case KaramataRegime::ZeroA: return {true, true, 1};
        case KaramataRegime::ZeroB: return {true, false, 1};
        case KaramataRegime::ZeroC: return {true, true, -1};
        case KaramataRegime::ZeroD: return {true, false, -1};
        case KaramataRegime::InfA: return {false, true, 1};
        case KaramataRegime::InfB: return {false, false, 1};
        case KaramataRegime::InfC: return {false, true, -1};
        case KaramataRegime::InfD: return {false, false, -1};
    }
    return {true, true, 1};
}

}  // namespace

ORVReport estimate_indices(const RadialProfile& w) {
    ORVReport rep;
    const int jz = ladder_length(w.lower(), true);
    const int ji = ladder_length(w.upper(), false);
    rep.octaves_zero = jz - kLadderStart + 1;
    rep.octaves_inf = ji - kLadderStart + 1;
    if (rep.octaves_zero < kMinLadder || rep.octaves_inf < kMinLadder)
        throw DomainError("insufficient range: the profile's working range gives ladders of " +
                          std::to_string(rep.octaves_zero) + " and " +
                          std::to_string(rep.octaves_inf) + " octaves, at least " +
                          std::to_string(kMinLadder) + " are needed");
    std::vector<double> lx;
    for (int k = -kXRange; k <= kXRange; ++k) {
        const double x = std::ldexp(1.0, k);
        double r1 = 0.0, r2 = 0.0;
        for (int j = kLadderStart; j <= jz; ++j) {
            const double e = std::ldexp(1.0, -j);
            const double ratio = checked(w, e * x) / checked(w, e);
            rep.ladder.push_back({e, x, ratio, true});
            r1 = std::max(r1, ratio);
        }
        for (int j = kLadderStart; j <= ji; ++j) {
            const double e = std::ldexp(1.0, j);
            const double ratio = checked(w, e * x) / checked(w, e);
            rep.ladder.push_back({e, x, ratio, false});
            r2 = std::max(r2, ratio);
        }
        rep.x.push_back(x);
        rep.r1.push_back(r1);
        rep.r2.push_back(r2);
        lx.push_back(std::log(x));
    }
    // outer four octaves on each side: k = -6..-2 and k = 2..6
    auto fit = [&](const std::vector<double>& r, int from) {
        std::vector<double> xs, ys;
        for (int i = from; i < from + 5; ++i) {
            xs.push_back(lx[i]);
            ys.push_back(std::log(r[i]));
        }
        return ls_slope(xs, ys);
    };
    const int lo = 0, hi = 2 * kXRange - 4;
    rep.p1 = fit(rep.r1, lo);
    rep.q1 = fit(rep.r1, hi);
    rep.p2 = fit(rep.r2, lo);
    rep.q2 = fit(rep.r2, hi);
    return rep;
}

AssumptionACheck check_assumption_A(const ORVReport& r, double sigma) {
    AssumptionACheck out;
    const double p[2] = {r.p1, r.p2};
    const double q[2] = {r.q1, r.q2};
    auto fail = [&](const std::string& why) {
        out.pass = false;
        out.reasons.push_back(why);
    };
    for (int i = 0; i < 2; ++i) {
        const std::string pi = "p" + std::to_string(i + 1), qi = "q" + std::to_string(i + 1);
        if (p[i] > q[i] + kSlack) fail(pi + " > " + qi);
        if (sigma < 1.0 - kSlack) {
            if (!(p[i] > 0.0)) fail(pi + " <= 0");
            if (!(q[i] < 1.0)) fail(qi + " >= 1");
        } else if (sigma <= 1.0 + kSlack) {
            if (!(p[i] > 0.0)) fail(pi + " <= 0");
            if (p[i] > 1.0 + kSlack) fail(pi + " > 1");
            if (q[i] < 1.0 - kSlack) fail(qi + " < 1");
            if (!(q[i] < 2.0)) fail(qi + " >= 2");
        } else {
            if (!(p[i] > 1.0)) fail(pi + " <= 1");
            if (!(q[i] < 2.0)) fail(qi + " >= 2");
        }
    }
    return out;
}

RadialProfile inverse_profile(const RadialProfile& w) {
    if (w.is_power()) {
        const double c = w.params()[0], e = w.params()[1];
        if (!(e > 0.0)) throw DomainError("inverse needs an increasing profile");
        return RadialProfile::power(std::pow(c, -1.0 / e), 1.0 / e);
    }
    const double lo_r = w.lower() > 0.0 ? w.lower() : 1e-300;
    const double hi_r = std::isinf(w.upper()) ? 1e300 : w.upper();
    auto inv = [w, lo_r, hi_r](double t) {
        if (!(t > 0.0)) throw DomainError("inverse profile needs t > 0");
        double lo = 1.0, hi = 1.0;
        if (w(1.0) >= t) {
            while (w(lo) >= t) {
                if (lo <= lo_r) throw DomainError("t outside the range of the profile");
                hi = lo;
                lo = std::max(0.5 * lo, lo_r);
            }
        } else {
            while (w(hi) < t) {
                if (hi >= hi_r) throw DomainError("t outside the range of the profile");
                lo = hi;
                hi = std::min(2.0 * hi, hi_r);
            }
        }
        // invariant: w(lo) < t <= w(hi)
        for (int it = 0; it < 200 && hi > lo * (1.0 + 1e-16); ++it) {
            const double mid = std::sqrt(lo * hi);
            if (mid <= lo || mid >= hi) break;
            if (w(mid) >= t)
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    };
    const double lo_v = w.lower() > 0.0 ? w(w.lower()) : 0.0;
    const double hi_v = std::isinf(w.upper()) ? std::numeric_limits<double>::infinity() : w(w.upper());
    return RadialProfile::from_function(inv, "inverse[" + w.description() + "]", lo_v, hi_v);
}

KaramataRegime parse_regime(const std::string& name) {
    static const char* names[] = {"zero-a", "zero-b", "zero-c", "zero-d",
                                  "inf-a",  "inf-b",  "inf-c",  "inf-d"};
    for (int i = 0; i < 8; ++i)
        if (name == names[i]) return static_cast<KaramataRegime>(i);
    throw DomainError("unknown Karamata regime '" + name + "'");
}

std::string regime_name(KaramataRegime r) {
    static const char* names[] = {"zero-a", "zero-b", "zero-c", "zero-d",
                                  "inf-a",  "inf-b",  "inf-c",  "inf-d"};
    return names[static_cast<int>(r)];
}

void check_karamata_cone(const ORVReport& ix, double tau, double beta, KaramataRegime regime) {
    const Side side = side_of(regime);
    if (side.beta_sign * beta <= 0.0)
        throw DomainError("cone: regime " + regime_name(regime) + " needs beta " +
                          (side.beta_sign > 0 ? "> 0" : "< 0"));
    bool ok = true;
    switch (regime) {
        case KaramataRegime::ZeroA: ok = tau > -beta * ix.p1; break;
        case KaramataRegime::ZeroB: ok = tau < -beta * ix.q1; break;
        case KaramataRegime::ZeroC: ok = tau > -beta * ix.q1; break;
        case KaramataRegime::ZeroD: ok = tau < -beta * ix.p1; break;
        case KaramataRegime::InfA: ok = -tau > beta * ix.q2; break;
        case KaramataRegime::InfB: ok = -tau < beta * ix.p2; break;
        case KaramataRegime::InfC: ok = tau < -beta * ix.p2; break;
        case KaramataRegime::InfD: ok = tau > -beta * ix.q2; break;
    }
    if (!ok)
        throw DomainError("cone: (tau, beta) = (" + std::to_string(tau) + ", " +
                          std::to_string(beta) + ") is not admissible for " + regime_name(regime));
}

KaramataResult karamata_check(const RadialProfile& w, double tau, double beta,
                              KaramataRegime regime, int resolution) {
    if (resolution < 1) throw DomainError("resolution must be >= 1");
    check_karamata_cone(estimate_indices(w), tau, beta, regime);
    const Side side = side_of(regime);
    const int n = kKaramataOctaves * resolution;
    const double du = (side.zero ? -1.0 : 1.0) * std::log(2.0) / resolution;

    // integrand in u = ln t
    auto g = [&](double u) { return std::exp(tau * u) * std::pow(w(std::exp(u)), beta); };
    auto scale = [&](double x) { return std::pow(x, tau) * std::pow(w(x), beta); };

    // panel[k] = ∫ between nodes k and k+1, with node k at u = k·du
    std::vector<double> panel(n);
    for (int k = 0; k < n; ++k) {
        const double a = k * du, b = (k + 1) * du;
        panel[k] = numeric::gauss20(g, std::min(a, b), std::max(a, b));
    }

    KaramataResult res;
    const double x_end = std::exp(n * du);
    res.limit_value = scale(x_end);
    std::vector<double> F(n + 1, 0.0);
    if (side.outer) {
        // from the far end inward; the far tail closes with the octave extrapolation
        auto integrand = [&](double t) { return std::pow(t, tau - 1.0) * std::pow(w(t), beta); };
        const auto tail = side.zero ? numeric::integrate_to_zero(integrand, x_end, 1e-12, resolution)
                                    : numeric::integrate_to_infinity(integrand, x_end, 1e-12, resolution);
        if (!tail.converged || !std::isfinite(tail.value)) {
            res.sup = std::numeric_limits<double>::infinity();
            res.divergent = true;
            res.divergent_endpoint = side.zero ? "0" : "inf";
            res.witness_x = x_end;
            return res;
        }
        F[n] = tail.value;
        for (int k = n - 1; k >= 0; --k) F[k] = F[k + 1] + panel[k];
    } else {
        for (int k = 1; k <= n; ++k) F[k] = F[k - 1] + panel[k - 1];
    }
    for (int k = 0; k <= n; ++k) {
        const double x = std::exp(k * du);
        const double ratio = F[k] / scale(x);
        if (ratio > res.sup) {
            res.sup = ratio;
            res.witness_x = x;
        }
    }
    return res;
}

SandwichResult profile_sandwich(const RadialProfile& w, double alpha1, double alpha2) {
    auto extremes = [&](int K, double& c1, double& c2) {
        c1 = std::numeric_limits<double>::infinity();
        c2 = 0.0;
        std::vector<double> v(2 * K + 1);
        for (int i = -K; i <= K; ++i) v[i + K] = checked(w, std::ldexp(1.0, i));
        for (int i = 0; i <= 2 * K; ++i)
            for (int j = i; j <= 2 * K; ++j) {
                const double ratio = v[j] / v[i];
                const double span = std::ldexp(1.0, j - i);
                c1 = std::min(c1, ratio / std::pow(span, alpha2));
                c2 = std::max(c2, ratio / std::pow(span, alpha1));
            }
    };
    SandwichResult out;
    extremes(16, out.c1_coarse, out.c2_coarse);
    extremes(32, out.c1, out.c2);
    if (!(out.c1 > 0.0) || !std::isfinite(out.c2) || out.c1 < 0.5 * out.c1_coarse ||
        out.c2 > 2.0 * out.c2_coarse) {
        std::ostringstream os;
        os << "exponent choice: sandwich constants drift under grid extension (c1 " << out.c1_coarse
           << " -> " << out.c1 << ", c2 " << out.c2_coarse << " -> " << out.c2 << ")";
        throw DomainError(os.str());
    }
    return out;
}

std::string to_csv(const ORVReport& r) {
    std::ostringstream os;
    os.precision(12);
    os << "quantity,value\n";
    os << "p1," << r.p1 << "\nq1," << r.q1 << "\np2," << r.p2 << "\nq2," << r.q2 << "\n";
    os << "octaves_zero," << r.octaves_zero << "\noctaves_inf," << r.octaves_inf << "\n";
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        os << "r1(" << r.x[i] << ")," << r.r1[i] << "\n";
        os << "r2(" << r.x[i] << ")," << r.r2[i] << "\n";
    }
    return os.str();
}

std::string to_text(const ORVReport& r) {
    std::ostringstream os;
    os.precision(6);
    os << "indices at zero:     p1 = " << r.p1 << "  q1 = " << r.q1 << "\n";
    os << "indices at infinity: p2 = " << r.p2 << "  q2 = " << r.q2 << "\n";
    os << "ladders: " << r.octaves_zero << " octaves toward 0, " << r.octaves_inf
       << " toward infinity\n";
    if (r.p1 <= 0 || r.p2 <= 0 || r.q1 <= 0 || r.q2 <= 0)
        os << "note: non-positive index estimate\n";
    return os.str();
}

}  // namespace levy
