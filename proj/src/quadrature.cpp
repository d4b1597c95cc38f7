#include "levy/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace levy::numeric {

namespace {

constexpr int kMinOctaves = 10;
constexpr int kMaxOctaves = 160;

using Rule = boost::math::quadrature::gauss<double, 20>;

// Octave walk shared by the zero and infinity variants. `next` maps the current
// inner endpoint to the next one (halving or doubling).
template <class Next>
QuadResult octave_walk(const RealFn& f, double start, Next next, double rtol, int sub) {
    QuadResult out;
    double edge = start;
    double prev = std::numeric_limits<double>::quiet_NaN();
    double prev_q = std::numeric_limits<double>::quiet_NaN();
    int growing = 0;
    for (int k = 0; k < kMaxOctaves; ++k) {
        const double other = next(edge);
        const double lo = std::min(edge, other);
        const double hi = std::max(edge, other);
        const double piece = integrate_octaves(f, lo, hi, sub);
        out.value += piece;
        edge = other;
        if (piece == 0.0 && (k > 0 && prev == 0.0)) {
            out.error = 0.0;
            return out;
        }
        if (k > 0 && prev != 0.0) {
            const double q = piece / prev;
            if (q >= 1.0 || !std::isfinite(q)) {
                ++growing;
            } else {
                growing = 0;
            }
            if (growing >= 4) {
                out.value = std::numeric_limits<double>::infinity();
                out.error = std::numeric_limits<double>::infinity();
                out.converged = false;
                return out;
            }
            if (k >= kMinOctaves && q > 0.0 && q < 1.0) {
                const double rem = piece * q / (1.0 - q);
                const double dq = std::isfinite(prev_q) ? std::abs(q - prev_q) : 1.0;
                const double err = std::abs(rem) * std::min(1.0, dq / (1.0 - q)) +
                                   1e-16 * std::abs(out.value);
                if (std::abs(rem) < rtol * std::abs(out.value) || k == kMaxOctaves - 1 ||
                    err < rtol * std::abs(out.value)) {
                    out.value += rem;
                    out.error = err;
                    return out;
                }
            }
            prev_q = q;
        }
        prev = piece;
    }
    // Exhausted without a usable ratio: report what was accumulated.
    out.error = std::abs(prev);
    out.converged = std::abs(prev) <= rtol * std::abs(out.value);
    return out;
}

}  // namespace

double gauss20(const RealFn& f, double a, double b) {
    return Rule::integrate(f, a, b);
}

double integrate_octaves(const RealFn& f, double a, double b, int sub) {
    if (!(b > a)) return 0.0;
    const double ratio = std::pow(2.0, 1.0 / std::max(sub, 1));
    double sum = 0.0;
    double lo = a;
    while (lo < b) {
        double hi = lo * ratio;
        if (hi > b * (1.0 - 1e-14)) hi = b;
        sum += Rule::integrate(f, lo, hi);
        lo = hi;
    }
    return sum;
}

QuadResult integrate_to_zero(const RealFn& f, double b, double rtol, int sub) {
    return octave_walk(f, b, [](double e) { return 0.5 * e; }, rtol, sub);
}

QuadResult integrate_to_infinity(const RealFn& f, double a, double rtol, int sub) {
    return octave_walk(f, a, [](double e) { return 2.0 * e; }, rtol, sub);
}

void cumulative_cubic(const double* t, const double* g, int n, double* out) {
    if (n <= 0) return;
    out[0] = 0.0;
    if (n < 4) {
        for (int i = 1; i < n; ++i)
            out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (g[i] + g[i - 1]);
        return;
    }
    // Integrate the Lagrange cubic through four neighbouring nodes over [t_i, t_{i+1}]
    // with 3-point Gauss-Legendre (exact for cubics).
    static const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
    static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    for (int i = 0; i + 1 < n; ++i) {
        int s = std::clamp(i - 1, 0, n - 4);
        const double a = t[i], b = t[i + 1];
        double acc = 0.0;
        for (int q = 0; q < 3; ++q) {
            const double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[q];
            double val = 0.0;
            for (int j = 0; j < 4; ++j) {
                double l = 1.0;
                for (int m = 0; m < 4; ++m)
                    if (m != j) l *= (x - t[s + m]) / (t[s + j] - t[s + m]);
                val += l * g[s + j];
            }
            acc += gw[q] * val;
        }
        out[i + 1] = out[i] + 0.5 * (b - a) * acc;
    }
}

}  // namespace levy::numeric
