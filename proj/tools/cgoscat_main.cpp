// Scenario-driven front end: forward scattering, CGO solves, exceptional-set
// scans, shell recovery, uniqueness experiments and the verification suite.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgoscat/cgo.hpp"
#include "cgoscat/checks.hpp"
#include "cgoscat/recon.hpp"
#include "cgoscat/rng.hpp"
#include "cgoscat/scattering.hpp"
#include "cgoscat/scenario.hpp"

namespace fs = std::filesystem;
using namespace cgoscat;
using nlohmann::json;

namespace {

constexpr int kExitVerification = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunContext {
    Scenario scenario;
    fs::path out;
    std::uint64_t seed = 0;
    Grid grid;
    Potential V;
    std::optional<Potential> Vp;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

fs::path resolve_out(const Scenario& s, const std::string& flag_out) {
    if (!flag_out.empty()) return flag_out;
    if (!s.out_dir.empty()) return s.out_dir;
    if (const char* root = std::getenv("CGOSCAT_OUT_ROOT")) return fs::path(root) / s.name;
    return fs::path("out") / s.name;
}

RunContext make_context(const std::string& scenario_path, const std::string& flag_out,
                        std::optional<std::uint64_t> flag_seed) {
    RunContext ctx;
    ctx.scenario = parse_scenario_file(scenario_path);
    if (flag_seed) ctx.scenario.seed = *flag_seed;
    ctx.seed = ctx.scenario.seed;
    ctx.out = resolve_out(ctx.scenario, flag_out);
    fs::create_directories(ctx.out);
    // normalized echo: the run is reproducible from this file alone
    write_text_file((ctx.out / "scenario.json").string(), normalized_scenario(ctx.scenario));

    ctx.grid = make_grid(ctx.scenario.L, ctx.scenario.N);
    ctx.V = make_potential(ctx.scenario.potential, ctx.scenario.gamma0, ctx.grid);
    if (ctx.scenario.potential_prime)
        ctx.Vp = make_potential(*ctx.scenario.potential_prime, ctx.scenario.gamma0, ctx.grid);
    return ctx;
}

std::vector<double> t_schedule_or_default(const Scenario& s) {
    return s.t_schedule.empty() ? std::vector<double>{2.0, 4.0, 8.0} : s.t_schedule;
}

void require_in_shell(const Vec3& zeta, double lambda, double gamma0) {
    const double lo = 2.0 * std::sqrt(lambda);
    const double hi = std::sqrt(4.0 * lambda + gamma0 * gamma0);
    const double r = norm(zeta);
    if (!(r > lo) || !(r < hi))
        throw ConfigError("recover: |zeta| = " + fmt17(r) + " outside the open shell (" +
                          fmt17(lo) + ", " + fmt17(hi) + ")");
}

CgoOptions cgo_options(const Scenario& s) {
    return CgoOptions{s.solver.cgo_tol, s.solver.cgo_max_iter, s.solver.restart};
}

PoissonOptions poisson_options(const Scenario& s) {
    return PoissonOptions{s.solver.poisson_tol, s.solver.poisson_max_iter, s.solver.restart};
}

// --- subcommands ------------------------------------------------------------

int run_forward(const RunContext& ctx) {
    const Scenario& s = ctx.scenario;
    const ScatteringMatrix S =
        scattering_matrix(ctx.V, s.lambda, s.k_max, poisson_options(s));
    write_smatrix(S, (ctx.out / "smatrix.cgos").string());
    std::cout << "smatrix: side " << S.side() << ", unitarity defect " << S.unitarity_defect
              << "\n";
    if (ctx.Vp) {
        const ScatteringMatrix Sp =
            scattering_matrix(*ctx.Vp, s.lambda, s.k_max, poisson_options(s));
        write_smatrix(Sp, (ctx.out / "smatrix_prime.cgos").string());
        std::cout << "smatrix_prime: unitarity defect " << Sp.unitarity_defect << "\n";
    }
    return 0;
}

int run_cgo(const RunContext& ctx) {
    const Scenario& s = ctx.scenario;
    const std::vector<Vec3> zetas =
        s.zeta_samples.empty() ? std::vector<Vec3>{Vec3{3, 0, 0}} : s.zeta_samples;
    std::string csv = "zeta1,zeta2,zeta3,t,residual,iterations,weighted_norm\n";
    int file_idx = 0;
    for (const Vec3& zeta : zetas)
        for (double t : t_schedule_or_default(s)) {
            const MomentumPair mp = rho_param(zeta, s.lambda, t);
            const Grid grid = make_grid(s.L, s.N, mp.frame);
            const Potential V = resample(ctx.V, grid);
            const CgoSolution sol = solve_cgo(V, mp.rho, cgo_options(s));
            const double wn = weighted_norm(sol.v, WeightedNormSpec{indicator_gamma(s.gamma0)});
            csv += fmt17(zeta.x) + "," + fmt17(zeta.y) + "," + fmt17(zeta.z) + "," + fmt17(t) +
                   "," + fmt17(sol.residual) + "," + std::to_string(sol.iterations) + "," +
                   fmt17(wn) + "\n";
            write_field_file(sol.v,
                             (ctx.out / ("cgo_" + std::to_string(file_idx++) + ".cgof")).string());
        }
    write_text_file((ctx.out / "cgo_diagnostics.csv").string(), csv);
    std::cout << "cgo: " << file_idx << " solutions written\n";
    return 0;
}

int run_scan(const RunContext& ctx) {
    const Scenario& s = ctx.scenario;
    if (!s.scan) throw ConfigError("scan-exceptional: scenario has no $.scan block");
    const Frame frame = ctx.grid.frame();
    std::vector<Vec3> rho_perps;
    for (const auto& p : s.scan->rho_perp)
        rho_perps.push_back(p[0] * frame[1] + p[1] * frame[2]);
    const ExceptionalScan scan =
        exceptional_scan(ctx.V, frame[0], s.scan->z, rho_perps, s.scan->probes,
                         split_seed(ctx.seed, "exceptional-scan"), s.scan->threshold);
    write_text_file((ctx.out / "exceptional_scan.csv").string(),
                    exceptional_scan_csv(scan, frame));
    int flagged = 0;
    for (const ScanPoint& p : scan.points) flagged += p.flagged ? 1 : 0;
    std::cout << "scan-exceptional: " << scan.points.size() << " points, " << flagged
              << " flagged\n";
    return 0;
}

int run_recover(const RunContext& ctx) {
    const Scenario& s = ctx.scenario;
    const Potential Vp = ctx.Vp ? *ctx.Vp : zero_potential(s.gamma0, ctx.grid);
    const std::vector<double> ts = t_schedule_or_default(s);
    const double t_final = ts.back();

    std::vector<ShellScan> scans;
    if (s.shell) {
        require_in_shell(Vec3{s.shell->abs_zeta, 0, 0}, s.lambda, s.gamma0);
        scans.push_back(shell_scan(ctx.V, Vp, s.shell->abs_zeta, s.shell->n_points, s.lambda,
                                   t_final, cgo_options(s)));
    }
    ShellScan point_scan;
    point_scan.t = t_final;
    for (const Vec3& zeta : s.zeta_samples) {
        require_in_shell(zeta, s.lambda, s.gamma0);
        ShellPoint pt;
        pt.zeta = zeta;
        pt.t = t_final;
        try {
            const FourierRecovery rec =
                recover_fourier(ctx.V, Vp, zeta, s.lambda, t_final, cgo_options(s));
            pt.value = rec.value;
            pt.err = rec.quadrature_err;
            pt.ok = true;
        } catch (const Error& e) {
            pt.message = e.what();
        }
        point_scan.points.push_back(pt);
    }
    if (!point_scan.points.empty()) scans.push_back(point_scan);
    if (scans.empty())
        throw ConfigError("recover: scenario needs $.shell or $.zeta_samples");
    write_text_file((ctx.out / "shell.csv").string(), shell_scan_csv(scans));

    // low-frequency completion from the successful samples
    std::vector<FourierSample> samples;
    for (const ShellScan& sc : scans)
        for (const ShellPoint& pt : sc.points)
            if (pt.ok) samples.push_back(FourierSample{pt.zeta, pt.value, pt.err});
    if (!samples.empty()) {
        const LowFreqModel model =
            lowfreq_complete(samples, s.lowfreq.reg_weight, s.lowfreq.n_widths,
                             s.lowfreq.width_lo, s.lowfreq.width_hi);
        json rep;
        rep["widths"] = model.widths;
        json coeffs = json::array();
        for (const Complex& c : model.coeffs) coeffs.push_back({c.real(), c.imag()});
        rep["coeffs"] = coeffs;
        rep["fit_residual"] = model.fit_residual;
        rep["value_at_zero"] = {model.eval_zero().real(), model.eval_zero().imag()};
        write_text_file((ctx.out / "lowfreq.json").string(), rep.dump(2) + "\n");
        std::cout << "recover: " << samples.size() << " samples, extrapolated value at zero "
                  << model.eval_zero().real() << "\n";
    }
    return 0;
}

int run_uniqueness(const RunContext& ctx) {
    const Scenario& s = ctx.scenario;
    if (!ctx.Vp) throw ConfigError("uniqueness: scenario has no $.potential_prime block");
    const double abs_zeta = s.shell ? s.shell->abs_zeta : 3.0;
    const int n_points = s.shell ? s.shell->n_points : 8;
    const double t_final = t_schedule_or_default(s).back();
    const UniquenessReport rep =
        uniqueness_experiment(ctx.V, *ctx.Vp, s.lambda, s.k_max, abs_zeta, n_points, t_final,
                              1e-3, 1e-3, cgo_options(s), poisson_options(s));

    json j;
    j["lambda"] = rep.lambda;
    j["k_max"] = rep.k_max;
    j["s_discrepancy"] = rep.s_discrepancy;
    j["s_defect"] = rep.s_defect;
    j["s_defect_prime"] = rep.s_defect_prime;
    j["cross_pairing_lhs"] = {rep.cross_pairing_lhs.real(), rep.cross_pairing_lhs.imag()};
    j["cross_pairing_rhs"] = {rep.cross_pairing_rhs.real(), rep.cross_pairing_rhs.imag()};
    j["max_shell_abs"] = rep.max_shell_abs;
    j["scattering_match"] = rep.scattering_match;
    j["potentials_match"] = rep.potentials_match;
    j["seed"] = ctx.seed;
    write_text_file((ctx.out / "uniqueness.json").string(), j.dump(2) + "\n");
    write_text_file((ctx.out / "shell.csv").string(), shell_scan_csv({rep.scan}));
    std::cout << "uniqueness: ||S - S'|| " << rep.s_discrepancy << ", max shell |V^ - V'^| "
              << rep.max_shell_abs << "\n";
    return 0;
}

int run_verify() {
    bool all_pass = true;
    for (int id = 1; id <= checks::count(); ++id) {
        const checks::CheckResult r = checks::run_check(id);
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.id << " " << r.name << ": "
                  << r.detail << std::endl;
    }
    return all_pass ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-energy scattering and CGO reconstruction toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir;
    int workers = 0;
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* sub, bool scenario_required) {
        auto* opt = sub->add_option("--scenario", scenario_path, "scenario JSON file");
        if (scenario_required) opt->required();
        sub->add_option("--out", out_dir, "output directory (overrides scenario)");
        sub->add_option("--workers", workers, "worker threads (0 = runtime default)");
        sub->add_option("--seed", seed, "override the scenario seed");
        return sub;
    };

    auto* c_forward = add_common(app.add_subcommand("forward", "compute scattering matrices"), true);
    auto* c_cgo = add_common(app.add_subcommand("cgo", "solve CGO problems"), true);
    auto* c_scan =
        add_common(app.add_subcommand("scan-exceptional", "scan the invertibility indicator"), true);
    auto* c_recover = add_common(app.add_subcommand("recover", "shell Fourier recovery"), true);
    auto* c_uni = add_common(app.add_subcommand("uniqueness", "two-potential comparison"), true);
    auto* c_verify = add_common(app.add_subcommand("verify", "run the verification suite"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitConfig;
    }

    try {
        if (workers > 0) kernels::set_workers(workers);
        if (c_verify->parsed()) return run_verify();
        RunContext ctx = make_context(scenario_path, out_dir, seed);
        if (c_forward->parsed()) return run_forward(ctx);
        if (c_cgo->parsed()) return run_cgo(ctx);
        if (c_scan->parsed()) return run_scan(ctx);
        if (c_recover->parsed()) return run_recover(ctx);
        if (c_uni->parsed()) return run_uniqueness(ctx);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NonConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
