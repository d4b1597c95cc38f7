#pragma once

#include <functional>

namespace levy::numeric {

using RealFn = std::function<double(double)>;

struct QuadResult {
    double value = 0.0;
    double error = 0.0;      // estimated absolute error
    bool converged = true;   // false: non-decaying octave contributions (divergence)
};

/// 20-point Gauss-Legendre on [a, b].
double gauss20(const RealFn& f, double a, double b);

/// Octave panels on [a, b], 0 < a < b. Each octave is split into `sub` pieces.
double integrate_octaves(const RealFn& f, double a, double b, int sub = 1);

/// ∫_0^b f(r) dr for f with an integrable power-type singularity at 0.
///
/// Sums octaves downward and closes with the geometric remainder implied by the
/// ratio of the last two octave contributions, which is exact for pure power laws.
QuadResult integrate_to_zero(const RealFn& f, double b, double rtol = 1e-13, int sub = 1);

/// ∫_a^∞ f(r) dr for f with power-type decay; mirror image of integrate_to_zero.
QuadResult integrate_to_infinity(const RealFn& f, double a, double rtol = 1e-13, int sub = 1);

/// Cumulative integral of nodal samples with a fourth-order local cubic rule.
/// out[i] = ∫_{t_0}^{t_i} g. Falls back to trapezoid for fewer than four nodes.
void cumulative_cubic(const double* t, const double* g, int n, double* out);

}  // namespace levy::numeric
