#pragma once

#include "levy/profile.hpp"

#include <string>
#include <vector>

namespace levy {

struct LadderSample {
    double eps = 0.0;
    double x = 0.0;
    double ratio = 0.0;   // w(εx)/w(ε)
    bool at_zero = true;  // ε → 0 ladder (else ε → ∞)
};

/// Matuszewska-type indices of an O-RV profile estimated from dyadic ladders.
struct ORVReport {
    double p1 = 0, q1 = 0;  // at zero
    double p2 = 0, q2 = 0;  // at infinity
    std::vector<double> x;   // sampled arguments 2^k
    std::vector<double> r1;  // limsup surrogate at zero, per x
    std::vector<double> r2;  // limsup surrogate at infinity, per x
    std::vector<LadderSample> ladder;
    int octaves_zero = 0;    // ladder lengths actually used
    int octaves_inf = 0;
};

ORVReport estimate_indices(const RadialProfile& profile);

struct AssumptionACheck {
    bool pass = true;
    std::vector<std::string> reasons;
};

AssumptionACheck check_assumption_A(const ORVReport& report, double sigma);

/// a(t) = inf{s > 0 : w(s) ≥ t}
RadialProfile inverse_profile(const RadialProfile& profile);

enum class KaramataRegime { ZeroA, ZeroB, ZeroC, ZeroD, InfA, InfB, InfC, InfD };

KaramataRegime parse_regime(const std::string& name);
std::string regime_name(KaramataRegime r);

struct KaramataResult {
    double sup = 0.0;
    double witness_x = 1.0;
    bool divergent = false;
    std::string divergent_endpoint;  // "0" or "inf" when divergent
    double limit_value = 0.0;        // x^τ w(x)^β at the far end of the x grid
};

/// sup over x of (∫ t^τ w(t)^β dt/t) / (x^τ w(x)^β), integral range set by the regime.
/// `resolution` multiplies the panels per octave (quadrature doubling study).
KaramataResult karamata_check(const RadialProfile& profile, double tau, double beta,
                              KaramataRegime regime, int resolution = 1);

/// Cone test only: throws DomainError when (τ, β) is inadmissible for the regime.
void check_karamata_cone(const ORVReport& indices, double tau, double beta, KaramataRegime regime);

struct SandwichResult {
    double c1 = 0.0;  // inf of [w(y)/w(x)]/(y/x)^{α₂}
    double c2 = 0.0;  // sup of [w(y)/w(x)]/(y/x)^{α₁}
    double c1_coarse = 0.0, c2_coarse = 0.0;
};

/// Throws DomainError ("exponent choice") when the extremes drift under grid extension.
SandwichResult profile_sandwich(const RadialProfile& profile, double alpha1, double alpha2);

std::string to_csv(const ORVReport& report);
std::string to_text(const ORVReport& report);

}  // namespace levy
