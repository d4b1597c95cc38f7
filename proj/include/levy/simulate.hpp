#pragma once

#include "levy/coefficient.hpp"
#include "levy/measures.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace levy {

struct SamplePlan {
    MeasureSpec spec;
    CoefficientSpec coeff = CoefficientSpec::constant(1.0);
    double s = 0.0, t = 1.0;
    std::size_t n = 1000;
    double eps = 1e-3;  // jumps with |y| ≤ eps are dropped
    std::uint64_t seed = 0;
};

/// Z_t − Z_s built from the jumps of size > eps: compound Poisson with thinning against K·ν
/// and the compensator drift of the χ_σ convention. Path j uses its own engine seeded by
/// (seed, j), so the output does not depend on how paths are scheduled.
std::vector<Vec> sample_increments(const SamplePlan& plan);

/// Expected jump count per path, (t − s)·K·ν(|y| > eps).
double expected_jumps(const SamplePlan& plan);

/// −∫_s^t∫_{|y|>eps} χ_σ(y)·y·m(r,y)ν(dy)dr
Vec compensator_drift(const SamplePlan& plan);

/// (t − s)·K·∫_{|y|≤eps}|2πξ·y|²ν(dy): bound on the CF error from dropped jumps.
double truncation_bias(const SamplePlan& plan, const Vec& xi);

/// (1/n)Σ e^{i2πξ·X_j}
std::vector<std::complex<double>> empirical_cf(const std::vector<Vec>& samples, const std::vector<Vec>& xi_set);

}  // namespace levy
