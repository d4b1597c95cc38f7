#pragma once

#include "levy/config.hpp"
#include "levy/profile.hpp"

#include <array>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace levy {

/// Points and frequencies in d ≤ 2; the second entry is ignored when d = 1.
using Vec = std::array<double, 2>;

/// Direction on the unit sphere given by its polar angle. In d = 1 only the angles
/// 0 (the point +1) and π (the point −1) are meaningful.
struct SphereAtom {
    double angle = 0.0;
    double weight = 1.0;
};

/// a(θ) = 1 − amp·(1 − cos(k(θ − phase)))/2, so 1 − amp ≤ a ≤ 1.
struct AngularDensity {
    double amp = 0.0;
    int harmonic = 0;
    double phase = 0.0;

    double operator()(double theta) const;
};

/// Finite measure on the sphere: the uniform (surface) measure or a list of atoms.
struct SphereMeasure {
    bool uniform = true;
    std::vector<SphereAtom> atoms;
};

/// ν(dy) = c·dy/|y|^{d+α}
struct RadialStable {
    int dim = 1;
    double alpha = 1.0;
    double c = 1.0;
};

/// Σᵢ cᵢ·dyᵢ/|yᵢ|^{1+α} times the point mass at zero in the other coordinates.
struct Anisotropic {
    int dim = 2;
    double alpha = 1.0;
    std::vector<double> c;
};

/// ν(B) = ∫∫ 1_B(rz)·a(z)·j(r)·r^{d−1} S(dz) dr
struct RadialAngular {
    int dim = 1;
    RadialProfile j;
    AngularDensity a;
    SphereMeasure S;
};

/// Isotropic kernel j_d(r) = c·r^{−d}/γ(r) with c between the two-sided bounds.
struct IsotropicUnimodal {
    int dim = 1;
    RadialProfile gamma;
    double c_low = 1.0;
    double c_high = 1.0;
};

using MeasureFamily = std::variant<RadialStable, Anisotropic, RadialAngular, IsotropicUnimodal>;

/// A validated Lévy measure, possibly transformed by reflection, symmetrization or a
/// zoom ν̃(dy) = weight·ν(zoom·dy). Immutable after construction.
class MeasureSpec {
public:
    static MeasureSpec radial_stable(int dim, double alpha, double c);
    static MeasureSpec anisotropic(int dim, double alpha, std::vector<double> c);
    static MeasureSpec radial_angular(int dim, RadialProfile j, AngularDensity a, SphereMeasure S,
                                      double sigma);
    static MeasureSpec isotropic_unimodal(int dim, RadialProfile gamma, double c_low,
                                          double c_high, double sigma);

    const MeasureFamily& family() const { return family_; }
    std::string family_name() const;
    int dim() const { return dim_; }
    double sigma() const { return sigma_; }
    bool symmetric() const { return symmetric_; }
    double weight() const { return weight_; }
    double zoom() const { return zoom_; }
    bool reflected() const { return reflected_; }
    bool symmetrized() const { return symmetrized_; }
    /// Non-fatal findings from construction (e.g. σ disagreeing with the profile).
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// Exact power-law radial part and symmetric angular part (stable-type family).
    bool is_power_law() const;
    /// Power-law exponent α when is_power_law().
    double power_alpha() const;

    bool operator==(const MeasureSpec& o) const;

private:
    friend MeasureSpec rescale(const MeasureSpec&, double);
    friend MeasureSpec scale(const MeasureSpec&, double, double);
    friend MeasureSpec symmetrize(const MeasureSpec&);
    friend MeasureSpec reflect(const MeasureSpec&);
    friend MeasureSpec measure_from_config(const Config&);

    MeasureSpec() = default;
    void validate();

    MeasureFamily family_;
    int dim_ = 1;
    double sigma_ = 1.0;
    bool symmetric_ = true;
    double weight_ = 1.0;
    double zoom_ = 1.0;
    bool reflected_ = false;
    bool symmetrized_ = false;
    std::vector<std::string> warnings_;
};

/// Polar form of a measure: radial mass density ρ(r)dr times an angular measure.
///
/// ν(B) = ∫∫ 1_B(rz) ρ(r) A(dz) dr with A either atoms or a density in θ (d = 2).
struct PolarMeasure {
    int dim = 1;
    double sigma = 1.0;
    std::function<double(double)> rho;
    bool power = false;          // ρ(r) = power_coeff·r^{−1−power_alpha}
    double power_coeff = 0.0;
    double power_alpha = 0.0;
    bool uniform = false;        // d = 2 angular density wrt dθ
    bool isotropic = false;      // uniform with a constant density
    std::function<double(double)> angular;
    std::vector<SphereAtom> atoms;

    double angular_mass() const;
    /// ∫ z A(dz)
    Vec angular_first_moment() const;
    /// ∫ (u·z)² A(dz) for the unit vector u at angle phi.
    double angular_quadratic(double phi) const;
    /// Symmetric under z ↦ −z.
    bool symmetric() const;
};

PolarMeasure polar(const MeasureSpec& spec);

/// ν({|y| > r})
double tail_mass(const MeasureSpec& spec, double r);

/// r ↦ 1/δ_ν(r)
RadialProfile w_profile(const MeasureSpec& spec);

/// ν̃_R(dy) = w_ν(R)·ν(R dy)
MeasureSpec rescale(const MeasureSpec& spec, double R);

/// weight·ν(R dy); rescale(spec, R) is scale(spec, w_ν(R), R).
MeasureSpec scale(const MeasureSpec& spec, double weight, double R);

MeasureSpec symmetrize(const MeasureSpec& spec);
MeasureSpec reflect(const MeasureSpec& spec);

struct MomentReport {
    double small_moment = 0.0;
    double large_moment = 0.0;
    double R = 1.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

/// ∫_{|y|≤1}|y|^{α₁} ν̃_R(dy) and ∫_{|y|>1}|y|^{α₂} ν̃_R(dy).
MomentReport truncated_moments(const MeasureSpec& spec, double alpha1, double alpha2, double R);

struct NondegeneracyReport {
    double value = 0.0;        // sampled infimum
    double witness_R = 1.0;    // scale attaining it
    double witness_angle = 0;  // direction attaining it
    bool degenerate = false;
};

/// min over R and unit ξ̂ of ∫_{|y|≤1} |ξ̂·y|² ν̃_R(dy).
NondegeneracyReport nondegeneracy(const MeasureSpec& spec, const std::vector<double>& R_grid,
                                  int n_dirs);

/// ∫_{r<|y|≤R} y ν(dy)
Vec annulus_first_moment(const MeasureSpec& spec, double r, double R);

MeasureSpec measure_from_config(const Config& cfg);
MeasureSpec load_measure(const std::string& path);
std::string serialize(const MeasureSpec& spec);

/// |S^{d−1}|: 2 for d = 1, 2π for d = 2.
double sphere_area(int dim);

}  // namespace levy
