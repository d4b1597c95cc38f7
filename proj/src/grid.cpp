#include "levy/grid.hpp"

#include "levy/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace levy {

SpectralGrid SpectralGrid::make(int dim, int n, double L) {
    if (dim != 1 && dim != 2) throw DomainError("grid dimension must be 1 or 2");
    if (n < 4 || !std::has_single_bit(static_cast<unsigned>(n)))
        throw DomainError("grid points per axis must be a power of two >= 4");
    if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("grid half-width must be positive");
    return {dim, n, L};
}

Vec SpectralGrid::point(std::size_t flat) const {
    if (dim == 1) return {coord(static_cast<int>(flat)), 0.0};
    return {coord(static_cast<int>(flat / n)), coord(static_cast<int>(flat % n))};
}

Vec SpectralGrid::frequency(std::size_t flat) const {
    if (dim == 1) return {freq(static_cast<int>(flat)), 0.0};
    return {freq(static_cast<int>(flat / n)), freq(static_cast<int>(flat % n))};
}

double SpectralGrid::cell() const { return dim == 1 ? h() : h() * h(); }

double SpectralGrid::xi_max() const {
    const double f = (n / 2) / (2.0 * L);
    return dim == 1 ? f : f * std::sqrt(2.0);
}

struct Transform::Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

namespace {

struct Buffer {
    explicit Buffer(std::size_t n) : p(fftw_alloc_complex(n)), n(n) {
        if (!p) throw std::bad_alloc();
    }
    ~Buffer() { fftw_free(p); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
    cplx* data() { return reinterpret_cast<cplx*>(p); }
    fftw_complex* raw() { return p; }
    fftw_complex* p;
    std::size_t n;
};

}  // namespace

Transform::Transform(const SpectralGrid& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
    const std::size_t N = grid.size();
    Buffer in(N), out(N);
    if (grid.dim == 1) {
        plans_->fwd = fftw_plan_dft_1d(grid.n, in.raw(), out.raw(), FFTW_FORWARD, FFTW_ESTIMATE);
        plans_->bwd = fftw_plan_dft_1d(grid.n, in.raw(), out.raw(), FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
        plans_->fwd = fftw_plan_dft_2d(grid.n, grid.n, in.raw(), out.raw(), FFTW_FORWARD, FFTW_ESTIMATE);
        plans_->bwd = fftw_plan_dft_2d(grid.n, grid.n, in.raw(), out.raw(), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plans_->fwd || !plans_->bwd) throw NumericError("FFTW planning failed", 0.0);
    phase_.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        int k = grid.dim == 1 ? static_cast<int>(i) : static_cast<int>(i / grid.n + i % grid.n);
        phase_[i] = (k % 2 == 0) ? 1.0 : -1.0;
    }
}

Transform::~Transform() {
    if (plans_) {
        if (plans_->fwd) fftw_destroy_plan(plans_->fwd);
        if (plans_->bwd) fftw_destroy_plan(plans_->bwd);
    }
}

Spectrum Transform::forward(const Field& f) const {
    Spectrum c(f.begin(), f.end());
    return forward(c);
}

Spectrum Transform::forward(const Spectrum& f) const {
    const std::size_t N = grid_.size();
    if (f.size() != N) throw DomainError("field does not match the grid");
    Buffer in(N), out(N);
    std::copy(f.begin(), f.end(), in.data());
    fftw_execute_dft(plans_->fwd, in.raw(), out.raw());
    const double w = grid_.cell();
    Spectrum s(N);
    for (std::size_t i = 0; i < N; ++i) s[i] = out.data()[i] * (w * phase_[i]);
    return s;
}

Spectrum Transform::inverse_complex(const Spectrum& s) const {
    const std::size_t N = grid_.size();
    if (s.size() != N) throw DomainError("spectrum does not match the grid");
    Buffer in(N), out(N);
    for (std::size_t i = 0; i < N; ++i) in.data()[i] = s[i] * phase_[i];
    fftw_execute_dft(plans_->bwd, in.raw(), out.raw());
    const double w = std::pow(1.0 / (2.0 * grid_.L), grid_.dim);
    Spectrum f(N);
    for (std::size_t i = 0; i < N; ++i) f[i] = out.data()[i] * w;
    return f;
}

Field Transform::inverse(const Spectrum& s, double* residue) const {
    const Spectrum c = inverse_complex(s);
    Field f(c.size());
    double r = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        f[i] = c[i].real();
        r = std::max(r, std::abs(c[i].imag()));
    }
    if (residue) *residue = r;
    return f;
}

Spectrum sample_symbol(const SpectralGrid& grid, const std::function<cplx(const Vec&)>& m) {
    Spectrum s(grid.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = m(grid.frequency(i));
    return s;
}

Field apply_multiplier(const SpectralGrid& grid, const Field& f, const Spectrum& m, double* residue) {
    Transform tr(grid);
    Spectrum s = tr.forward(f);
    if (m.size() != s.size()) throw DomainError("multiplier does not match the grid");
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= m[i];
    return tr.inverse(s, residue);
}

double lp_norm(const SpectralGrid& grid, const Field& f, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("L_p norm needs 1 <= p < inf");
    double s = 0.0;
    if (p == 2.0) {
        for (double v : f) s += v * v;
        return std::sqrt(s * grid.cell());
    }
    if (p == 1.0) {
        for (double v : f) s += std::abs(v);
        return s * grid.cell();
    }
    // scale by the max to avoid overflow for large p
    double mx = 0.0;
    for (double v : f) mx = std::max(mx, std::abs(v));
    if (mx == 0.0) return 0.0;
    for (double v : f) s += std::pow(std::abs(v) / mx, p);
    return mx * std::pow(s * grid.cell(), 1.0 / p);
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

std::uint64_t get_le(const std::string& in, std::size_t& pos, int bytes) {
    if (pos + bytes > in.size()) throw ConfigError("LVF1 file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    pos += bytes;
    return v;
}

double get_f64(const std::string& in, std::size_t& pos) {
    const std::uint64_t u = get_le(in, pos, 8);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

std::string lvf1_bytes(const std::vector<std::uint32_t>& dims, double L, const std::vector<double>& v) {
    std::string out = "LVF1";
    out.reserve(16 + 4 * dims.size() + 8 * v.size());
    put_u32(out, static_cast<std::uint32_t>(dims.size()));
    for (auto d : dims) put_u32(out, d);
    put_f64(out, L);
    for (double x : v) put_f64(out, x);
    return out;
}

}  // namespace

void write_lvf1(const std::string& path, const SpectralGrid& grid, const Field& values) {
    if (values.size() != grid.size()) throw DomainError("field does not match the grid");
    std::vector<std::uint32_t> dims(grid.dim, static_cast<std::uint32_t>(grid.n));
    write_atomic(path, lvf1_bytes(dims, grid.L, values));
}

void write_lvf1_columns(const std::string& path, int columns, const std::vector<double>& rows) {
    if (columns < 1 || rows.size() % columns != 0) throw DomainError("row data does not match column count");
    const std::vector<std::uint32_t> dims{static_cast<std::uint32_t>(rows.size() / columns),
                                          static_cast<std::uint32_t>(columns)};
    write_atomic(path, lvf1_bytes(dims, 0.0, rows));
}

void read_lvf1(const std::string& path, SpectralGrid& grid, Field& values) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();
    if (data.size() < 4 || data.compare(0, 4, "LVF1") != 0) throw ConfigError("'" + path + "' is not an LVF1 file");
    std::size_t pos = 4;
    const auto dim = static_cast<int>(get_le(data, pos, 4));
    if (dim < 1 || dim > 2) throw ConfigError("LVF1 dimension must be 1 or 2");
    std::vector<int> n(dim);
    std::size_t count = 1;
    for (int i = 0; i < dim; ++i) {
        n[i] = static_cast<int>(get_le(data, pos, 4));
        count *= static_cast<std::size_t>(n[i]);
    }
    if (dim == 2 && n[0] != n[1]) throw ConfigError("LVF1 grid is not square");
    const double L = get_f64(data, pos);
    if (data.size() - pos != 8 * count) throw ConfigError("LVF1 payload size mismatch");
    grid = SpectralGrid::make(dim, n[0], L);
    values.resize(count);
    for (auto& v : values) v = get_f64(data, pos);
}

void write_atomic(const std::string& path, const std::string& bytes) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot write '" + tmp.string() + "'");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw DomainError("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
}

}  // namespace levy
