// levytool: analyze, symbol, density, simulate, solve and verify from one measure config.
//
// Exit codes: 0 ok, 1 domain error, 2 numeric tolerance missed, 64 usage, 65 config parse failure.

#include "levy/coefficient.hpp"
#include "levy/config.hpp"
#include "levy/density.hpp"
#include "levy/error.hpp"
#include "levy/grid.hpp"
#include "levy/measures.hpp"
#include "levy/orv.hpp"
#include "levy/simulate.hpp"
#include "levy/solver.hpp"
#include "levy/spaces.hpp"
#include "levy/symbol.hpp"
#include "levy/verify.hpp"

#include <CLI11.hpp>
#include <boost/version.hpp>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace levy;

constexpr const char* kToolVersion = "1.0.0";
constexpr int kExitDomain = 1, kExitNumeric = 2, kExitUsage = 64, kExitConfig = 65;

struct Options {
    std::string measure;
    std::string out = "out";
    std::uint64_t seed = 20240611;
    std::optional<int> grid_n;
    std::optional<double> grid_L;
    std::string suite = "all";
    double tol_scale = 1.0;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// FNV-1a, 64 bit
std::string hash_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

class Run {
public:
    Run(std::string sub, const Options& opt) : sub_(std::move(sub)), opt_(opt) {
        if (!opt.measure.empty()) cfg_ = Config::load(opt.measure);
    }

    const Config& cfg() const { return cfg_; }
    bool has_measure() const { return !opt_.measure.empty(); }

    MeasureSpec measure() const {
        if (!has_measure()) throw ConfigError("--measure is required for '" + sub_ + "'");
        return measure_from_config(cfg_);
    }
    CoefficientSpec coefficient() const { return coefficient_from_config(cfg_.subset("coeff")); }

    SpectralGrid grid(int dim, int n_default, double L_default) const {
        const int n = opt_.grid_n ? *opt_.grid_n : static_cast<int>(cfg_.get_int("grid.n", n_default));
        const double L = opt_.grid_L ? *opt_.grid_L : cfg_.get_double("grid.L", L_default);
        return SpectralGrid::make(dim, n, L);
    }

    std::string path(const std::string& name) const { return (std::filesystem::path(opt_.out) / name).string(); }

    void write(const std::string& name, const std::string& text) {
        write_atomic(path(name), text);
        files_.push_back(name);
    }
    void write_field(const std::string& name, const SpectralGrid& g, const Field& f) {
        write_lvf1(path(name), g, f);
        files_.push_back(name);
    }
    void record(const std::string& key, const std::string& value) { extra_.emplace_back(key, value); }

    void manifest() {
        std::ostringstream canon;
        canon << "subcommand=" << sub_ << "\n" << cfg_.to_string();
        if (opt_.grid_n) canon << "flag.grid-n=" << *opt_.grid_n << "\n";
        if (opt_.grid_L) canon << "flag.grid-L=" << num(*opt_.grid_L) << "\n";
        if (sub_ == "verify") canon << "flag.suite=" << opt_.suite << "\nflag.tol-scale=" << num(opt_.tol_scale) << "\n";
        std::ostringstream os;
        os << "tool = levytool " << kToolVersion << "\n";
        os << "subcommand = " << sub_ << "\n";
        os << "config = " << (has_measure() ? std::filesystem::path(opt_.measure).filename().string() : "-") << "\n";
        os << "config_hash = fnv1a64:" << hash_hex(canon.str()) << "\n";
        os << "seed = " << opt_.seed << "\n";
        os << "corpus_version = " << kCorpusVersion << "\n";
        os << "fftw = " << fftw_version << "\n";
        os << "boost = " << BOOST_LIB_VERSION << "\n";
        os << "compiler = " << __VERSION__ << "\n";
        for (const auto& [k, v] : extra_) os << k << " = " << v << "\n";
        for (const auto& f : files_) os << "output = " << f << "\n";
        write_atomic(path("manifest.txt"), os.str());
    }

private:
    std::string sub_;
    Options opt_;
    Config cfg_;
    std::vector<std::string> files_;
    std::vector<std::pair<std::string, std::string>> extra_;
};

int cmd_analyze(Run& run) {
    const auto spec = run.measure();
    const auto w = w_profile(spec);
    const auto rep = estimate_indices(w);
    run.write("orv.csv", to_csv(rep));
    std::ostringstream prof;
    prof << "r,w\n";
    for (int k = -40; k <= 40; ++k) {
        const double r = std::pow(2.0, k / 4.0);
        prof << num(r) << "," << num(w(r)) << "\n";
    }
    run.write("profile.csv", prof.str());
    const auto a = check_assumption_A(rep, spec.sigma());
    std::ostringstream sum;
    sum << "quantity,value\n";
    sum << "family," << spec.family_name() << "\ndim," << spec.dim() << "\nsigma," << num(spec.sigma()) << "\n";
    sum << "assumption_A," << (a.pass ? "pass" : "fail") << "\n";
    for (const auto& why : a.reasons) sum << "assumption_A_reason,\"" << why << "\"\n";
    std::vector<double> Rs;
    for (int j = -10; j <= 10; ++j) Rs.push_back(std::ldexp(1.0, j));
    const auto nd = nondegeneracy(spec, Rs, spec.dim() == 1 ? 2 : 32);
    sum << "nondegeneracy," << num(nd.value) << "\n";
    for (const auto& wmsg : spec.warnings()) sum << "warning,\"" << wmsg << "\"\n";
    run.write("analysis.csv", sum.str());
    std::cout << to_text(rep) << "assumption A: " << (a.pass ? "pass" : "fail") << "\n";
    return 0;
}

int cmd_symbol(Run& run) {
    const auto spec = run.measure();
    const auto g = run.grid(spec.dim(), 256, 16.0);
    SymbolEvaluator ev(polar(spec), g.xi_min(), g.xi_max());
    std::ostringstream os;
    os << "xi,re,im\n";
    for (int k = -g.n / 2; k < g.n / 2; ++k) {
        const double xi = k / (2.0 * g.L);
        const cplx v = ev({xi, 0.0});
        os << num(xi) << "," << num(v.real()) << "," << num(v.imag()) << "\n";
    }
    run.write("symbol.csv", os.str());
    const Spectrum s = sample_symbol(g, [&](const Vec& xi) { return ev(xi); });
    Field re(g.size()), im(g.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        re[i] = s[i].real();
        im[i] = s[i].imag();
    }
    run.write_field("symbol_re.lvf1", g, re);
    run.write_field("symbol_im.lvf1", g, im);
    return 0;
}

int cmd_density(Run& run) {
    const auto spec = run.measure();
    const auto coeff = run.coefficient();
    const auto g = run.grid(spec.dim(), spec.dim() == 1 ? 1024 : 256, 64.0);
    const double s = run.cfg().get_double("density.s", 0.0), t = run.cfg().get_double("density.t", 1.0);
    const auto d = transition_density(spec, coeff, s, t, g);
    std::ostringstream os;
    if (g.dim == 1) {
        os << "x,p\n";
        for (std::size_t i = 0; i < g.size(); ++i) os << num(g.point(i)[0]) << "," << num(d.values[i]) << "\n";
    } else {
        os << "x0,x1,p\n";
        for (std::size_t i = 0; i < g.size(); ++i)
            os << num(g.point(i)[0]) << "," << num(g.point(i)[1]) << "," << num(d.values[i]) << "\n";
    }
    run.write("density.csv", os.str());
    run.write_field("density.lvf1", g, d.values);
    run.record("mass_defect", num(d.mass_defect));
    run.record("tail_estimate", num(d.tail_estimate));
    run.record("imag_residue", num(d.imag_residue));
    return 0;
}

int cmd_simulate(Run& run, std::uint64_t seed) {
    SamplePlan p{run.measure()};
    p.coeff = run.coefficient();
    p.s = run.cfg().get_double("simulate.s", 0.0);
    p.t = run.cfg().get_double("simulate.t", 1.0);
    p.n = static_cast<std::size_t>(run.cfg().get_int("simulate.n", 10000));
    p.eps = run.cfg().get_double("simulate.eps", 1e-3);
    p.seed = seed;
    const auto x = sample_increments(p);
    std::ostringstream os;
    os << (p.spec.dim() == 1 ? "x\n" : "x0,x1\n");
    for (const auto& v : x) {
        os << num(v[0]);
        if (p.spec.dim() == 2) os << "," << num(v[1]);
        os << "\n";
    }
    run.write("samples.csv", os.str());
    std::vector<Vec> xis;
    for (double xi : run.cfg().has("simulate.xi") ? run.cfg().get_list("simulate.xi") : std::vector<double>{0.25, 0.5, 1.0})
        xis.push_back({xi, 0.0});
    const auto cf = empirical_cf(x, xis);
    std::ostringstream cs;
    cs << "xi,re_empirical,im_empirical,re_exact,im_exact,abs_error,envelope\n";
    bool within = true;
    for (std::size_t i = 0; i < xis.size(); ++i) {
        const cplx exact = std::exp(psi_time_avg(p.spec, p.coeff, p.s, p.t, xis[i]).value());
        const double env = 5.0 / std::sqrt(double(p.n)) + truncation_bias(p, xis[i]);
        const double err = std::abs(cf[i] - exact);
        within = within && err < env;
        cs << num(xis[i][0]) << "," << num(cf[i].real()) << "," << num(cf[i].imag()) << "," << num(exact.real())
           << "," << num(exact.imag()) << "," << num(err) << "," << num(env) << "\n";
    }
    run.write("cf.csv", cs.str());
    run.record("expected_jumps_per_path", num(expected_jumps(p)));
    run.record("cf_within_envelope", within ? "yes" : "no");
    return 0;
}

int cmd_solve(Run& run) {
    const auto spec = run.measure();
    const auto coeff = run.coefficient();
    const Config& c = run.cfg();
    const auto g = run.grid(spec.dim(), 256, 8.0);
    const double lambda = c.get_double("solve.lambda", 1.0), T = c.get_double("solve.T", 1.0);
    const int n_t = static_cast<int>(c.get_int("solve.n_t", 40));
    const double p = c.get_double("solve.p", 2.0);
    const std::string kind = c.get("solve.forcing", "gauss");
    auto r2 = [](const Vec& x) { return x[0] * x[0] + x[1] * x[1]; };

    Trajectory f;
    std::optional<Field> exact;  // u*(T) for the manufactured forcing
    if (kind == "flat") {
        f = sample_forcing(g, T, n_t, [](double, const Vec&) { return 1.0; });
    } else if (kind == "gauss") {
        f = sample_forcing(g, T, n_t, [&](double t, const Vec& x) { return (1.0 + t) * std::exp(-r2(x)); });
    } else if (kind == "manufactured") {
        Field gf(g.size());
        for (std::size_t i = 0; i < gf.size(); ++i) gf[i] = std::exp(-r2(g.point(i)));
        const Field Lg = NonlocalOperator(spec, coeff, g).apply(gf, 0.0);
        f = Trajectory{g, {}, {}};
        for (int i = 0; i <= n_t; ++i) {
            const double t = T * i / n_t;
            Field v(g.size());
            for (std::size_t k = 0; k < v.size(); ++k) v[k] = gf[k] - t * Lg[k] + lambda * t * gf[k];
            f.times.push_back(t);
            f.fields.push_back(std::move(v));
        }
        exact = gf;
        for (double& v : *exact) v *= T;
    } else {
        throw ConfigError("solve.forcing must be flat, gauss or manufactured");
    }
    if (coeff.t_dependent() && coeff.x_dependent())
        throw DomainError("frozen iteration needs a time-independent x factor per term");

    SolveResult r;
    const std::string method = c.get("solve.method", coeff.x_dependent() ? "frozen" : "duhamel");
    if (method == "duhamel") {
        r = solve_duhamel(spec, coeff, lambda, f, p);
    } else if (method == "frozen") {
        FrozenOptions fo;
        fo.homotopy = static_cast<int>(c.get_int("solve.homotopy", 4));
        fo.tol = c.get_double("solve.tol", 1e-10);
        fo.max_iter = static_cast<int>(c.get_int("solve.max_iter", 50));
        fo.p = p;
        r = solve_frozen_iteration(spec, coeff, lambda, f, fo);
    } else {
        throw ConfigError("solve.method must be duhamel or frozen");
    }

    const auto& d = r.diag;
    std::ostringstream os;
    os << "quantity,value\n";
    os << "method," << method << "\nlambda," << num(d.lambda) << "\nT," << num(d.T) << "\np," << num(d.p) << "\n";
    os << "residual," << num(d.residual) << "\nu_norm," << num(d.u_norm) << "\nLu_norm," << num(d.Lu_norm)
       << "\ndtu_norm," << num(d.dtu_norm) << "\nf_norm," << num(d.f_norm) << "\nrho_lambda," << num(d.rho_lambda)
       << "\nN_main," << num(d.N_main) << "\nN_zero," << num(d.N_zero) << "\n";
    os << "zero_solution," << (d.zero_solution ? 1 : 0) << "\np_above_d_over_beta," << (d.p_above_d_over_beta ? 1 : 0)
       << "\n";
    for (std::size_t i = 0; i < d.iterations.size(); ++i) os << "iterations_level_" << i + 1 << "," << d.iterations[i] << "\n";
    if (exact) {
        Field diff = r.u.fields.back();
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= (*exact)[i];
        os << "manufactured_l2_error," << num(lp_norm(g, diff, 2.0) / lp_norm(g, *exact, 2.0)) << "\n";
    }
    run.write("diagnostics.csv", os.str());

    std::ostringstream us;
    const Field& uT = r.u.fields.back();
    if (g.dim == 1) {
        us << "x,u\n";
        for (std::size_t i = 0; i < g.size(); ++i) us << num(g.point(i)[0]) << "," << num(uT[i]) << "\n";
    } else {
        us << "x0,x1,u\n";
        for (std::size_t i = 0; i < g.size(); ++i)
            us << num(g.point(i)[0]) << "," << num(g.point(i)[1]) << "," << num(uT[i]) << "\n";
    }
    run.write("solution.csv", us.str());
    run.write_field("solution.lvf1", g, uT);
    const double tol = c.get_double("solve.residual_tol", 1e-6);
    run.record("residual", num(d.residual));
    if (!(d.residual <= tol)) {
        run.manifest();
        throw NumericError("solution residual exceeds solve.residual_tol = " + num(tol), d.residual);
    }
    return 0;
}

int cmd_verify(Run& run, const Options& opt) {
    VerifyOptions vo;
    vo.tol_scale = opt.tol_scale;
    vo.seed = opt.seed;
    if (run.has_measure()) {
        const auto g = run.grid(1, vo.grid_n, vo.grid_L);
        vo.grid_n = g.n;
        vo.grid_L = g.L;
    }

    std::vector<CheckResult> results;
    const std::string& suite = opt.suite;
    const bool all = suite == "all";
    if (all || suite == "acceptance") {
        results = run_acceptance(vo);
    } else if (suite != "measure") {
        // comma-separated criterion numbers
        std::vector<int> ids;
        for (const auto& item : split(suite, ',')) {
            try {
                std::size_t used = 0;
                const int id = std::stoi(item, &used);
                if (used != trim(item).size() && used != item.size()) throw std::invalid_argument(item);
                ids.push_back(id);
            } catch (const std::logic_error&) {
                throw CLI::ValidationError("--suite", "expected all, acceptance, measure or criterion numbers, got '" + suite + "'");
            }
        }
        results = run_acceptance(vo, ids);
    }
    if (all || suite == "measure") {
        if (!run.has_measure()) {
            if (suite == "measure") throw ConfigError("--suite measure needs --measure");
        } else {
            const auto more = run_measure_suite(run.measure(), vo);
            results.insert(results.end(), more.begin(), more.end());
        }
    }
    run.write("verify.csv", results_csv(results));
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s %-12s %-52s score=%.4g\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(), r.score);
        if (!r.pass) {
            ++failed;
            std::printf("     %s%s%s\n", r.detail.c_str(), r.timing.empty() ? "" : "; ", r.timing.c_str());
        }
    }
    std::printf("%d of %zu checks failed\n", failed, results.size());
    run.record("checks", std::to_string(results.size()));
    run.record("failed", std::to_string(failed));
    if (failed > 0) {
        run.manifest();
        throw NumericError("verification checks exceeded tolerance: failed count", failed);
    }
    return 0;
}

int exit_code(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Config: return kExitConfig;
        case ErrorKind::Numeric: return kExitNumeric;
        case ErrorKind::Domain: break;
    }
    return kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Levy-type operators: measure analysis, densities, simulation and solvers"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    Options opt;
    app.add_option("--measure", opt.measure, "measure config file (key = value)");
    app.add_option("--out", opt.out, "output directory")->capture_default_str();
    app.add_option("--seed", opt.seed, "random seed")->capture_default_str();
    app.add_option("--grid-n", opt.grid_n, "grid points per axis")->check(CLI::Range(8, 1 << 16));
    app.add_option("--grid-L", opt.grid_L, "grid half-width")->check(CLI::PositiveNumber);
    app.add_option("--suite", opt.suite, "verify: all, acceptance, measure or criterion numbers (1,6,9)")
        ->capture_default_str();
    app.add_option("--tol-scale", opt.tol_scale, "verify: tolerance multiplier")->check(CLI::PositiveNumber);

    const std::vector<std::pair<const char*, const char*>> subs = {
        {"analyze", "O-RV indices, assumption checks and the scale profile"},
        {"symbol", "symbol on the frequency lattice"},
        {"density", "transition density by Fourier inversion"},
        {"simulate", "Monte Carlo increments and their characteristic function"},
        {"solve", "Duhamel or frozen-coefficient solve of the evolution equation"},
        {"verify", "acceptance criteria and checks on the supplied measure"},
    };
    for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        Run run(sub, opt);
        int code = 0;
        if (sub == "analyze") code = cmd_analyze(run);
        else if (sub == "symbol") code = cmd_symbol(run);
        else if (sub == "density") code = cmd_density(run);
        else if (sub == "simulate") code = cmd_simulate(run, opt.seed);
        else if (sub == "solve") code = cmd_solve(run);
        else code = cmd_verify(run, opt);
        run.manifest();
        return code;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (const auto* g = dynamic_cast<const GridTooSmallError*>(&e))
            std::cerr << "hint: try --grid-L " << g->suggested_half_width() << " --grid-n " << g->suggested_points() << "\n";
        return exit_code(e);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}
