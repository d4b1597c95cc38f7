#pragma once

#include "levy/measures.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace levy {

using cplx = std::complex<double>;
using Field = std::vector<double>;
using Spectrum = std::vector<cplx>;

/// Periodic box [−L, L)^dim with n points per axis; ξ_k = k/(2L) with signed k.
/// Flat index i = i0·n + i1 in d = 2 (row-major, axis 0 slowest).
struct SpectralGrid {
    int dim = 1;
    int n = 256;
    double L = 16.0;

    static SpectralGrid make(int dim, int n, double L);

    double h() const { return 2.0 * L / n; }
    std::size_t size() const { return dim == 1 ? std::size_t(n) : std::size_t(n) * n; }
    double coord(int i) const { return -L + i * h(); }
    /// Signed frequency index for storage slot k.
    int signed_index(int k) const { return k < n / 2 ? k : k - n; }
    double freq(int k) const { return signed_index(k) / (2.0 * L); }
    Vec point(std::size_t flat) const;
    Vec frequency(std::size_t flat) const;
    double cell() const;  // h^dim
    /// Largest |ξ| on the lattice and the smallest non-zero one.
    double xi_max() const;
    double xi_min() const { return 1.0 / (2.0 * L); }

    bool operator==(const SpectralGrid& o) const { return dim == o.dim && n == o.n && L == o.L; }
};

/// FFTW plans for one grid shape; forward returns the continuous-transform samples
/// f̂(ξ_k) ≈ ∫ f(x)e^{−i2πξ_k·x}dx, inverse is its exact inverse.
class Transform {
public:
    explicit Transform(const SpectralGrid& grid);
    ~Transform();
    Transform(const Transform&) = delete;
    Transform& operator=(const Transform&) = delete;

    Spectrum forward(const Field& f) const;
    Spectrum forward(const Spectrum& f) const;
    /// Real part of the inverse; the largest discarded imaginary part goes to residue.
    Field inverse(const Spectrum& s, double* residue = nullptr) const;
    Spectrum inverse_complex(const Spectrum& s) const;
    const SpectralGrid& grid() const { return grid_; }

private:
    struct Plans;
    SpectralGrid grid_;
    std::unique_ptr<Plans> plans_;
    std::vector<double> phase_;  // (−1)^{k0+k1} from the box offset
};

/// Samples m(ξ) at every lattice frequency.
Spectrum sample_symbol(const SpectralGrid& grid, const std::function<cplx(const Vec&)>& m);

/// F^{-1}[m·F f]
Field apply_multiplier(const SpectralGrid& grid, const Field& f, const Spectrum& m,
                       double* residue = nullptr);

/// Discrete L_p norm (Σ|f|^p h^d)^{1/p}.
double lp_norm(const SpectralGrid& grid, const Field& f, double p);

/// Fields with their grid, as written to disk.
void write_lvf1(const std::string& path, const SpectralGrid& grid, const Field& values);
void read_lvf1(const std::string& path, SpectralGrid& grid, Field& values);
/// Raw table of columns (dim = number of columns) in the same layout.
void write_lvf1_columns(const std::string& path, int columns, const std::vector<double>& rows);

/// Write through a sibling temporary file and rename over the target.
void write_atomic(const std::string& path, const std::string& bytes);

}  // namespace levy
