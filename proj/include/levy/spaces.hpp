#pragma once

#include "levy/grid.hpp"
#include "levy/measures.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace levy {

enum class MultiplierKind { Bessel, Fractional, Generator };

/// Bessel: (1 − ψ^{ν_sym})^s. Fractional: −(−ψ^{ν_sym})^s. Generator: ψ^ν (s unused).
Spectrum norm_multiplier(const MeasureSpec& spec, const SpectralGrid& grid, double s, MultiplierKind kind);

/// |F^{-1}[m·F field]|_p for the multiplier of `kind`.
double multiplier_norm(const SpectralGrid& grid, const Field& field, const MeasureSpec& spec, double s,
                       double p, MultiplierKind kind);

struct NormReport {
    double lp = 0.0;
    double generator_lp = 0.0;  // |L^ν f|_p
    double bessel = 0.0;        // |J^s f|_p
    double s = 0.0, p = 2.0;
};
NormReport norm_report(const SpectralGrid& grid, const Field& field, const MeasureSpec& spec, double s, double p);

/// Fields at ordered time nodes on one grid.
struct Trajectory {
    SpectralGrid grid;
    std::vector<double> times;
    std::vector<Field> fields;
};

/// (∫|f(t)|_p^p dt)^{1/p} over [t_0, t_last], exact for the interpolant linear in time at each point.
double spacetime_norm(const Trajectory& traj, double p);

struct ContinuityReport {
    double sup = 0.0;
    std::size_t used = 0;
    std::size_t skipped = 0;  // |L^ν f|_p < 1e-12
};

/// sup over the fields of |L^π f|_p / |L^ν f|_p.
ContinuityReport continuity_ratio(const MeasureSpec& pi, const MeasureSpec& spec, const SpectralGrid& grid,
                                  const std::vector<Field>& fields, double p);

struct EquivalenceReport {
    double low = 0.0, high = 0.0;  // range of (|f| + |L^{ν;1}f|)/(|f| + |L^ν f|)
};
EquivalenceReport norm_equivalence(const MeasureSpec& spec, const SpectralGrid& grid, const std::vector<Field>& fields,
                                   double p);

/// Fixed test corpus: Gaussians, bump differences and random band-limited fields whose
/// spectra are drawn from `seed`. Corpus version 1.
std::vector<Field> test_corpus(const SpectralGrid& grid, std::uint64_t seed = 1);
inline constexpr int kCorpusVersion = 1;

}  // namespace levy
