#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgoscat/field.hpp"
#include "cgoscat/recon.hpp"

namespace cgoscat {

// Solver knobs shared by the CGO and Lippmann-Schwinger iterations.
struct SolverConfig {
    double cgo_tol = 1e-8;
    int cgo_max_iter = 400;
    int restart = 30;
    double poisson_tol = 1e-8;
    int poisson_max_iter = 200;
};

// Invertibility-scan sample set; rho_perp is given in the (mu, e3) plane of
// the grid frame.
struct ScanConfig {
    std::vector<Complex> z;
    std::vector<std::array<double, 2>> rho_perp;
    int probes = 4;
    double threshold = 1e-3;
};

struct ShellConfig {
    double abs_zeta = 3.0;
    int n_points = 24;
};

struct LowFreqConfig {
    int n_widths = 8;
    double reg_weight = 1e-2;
    double width_lo = 0.5;
    double width_hi = 1.8;
};

// One fully-specified experiment. JSON on disk (comments allowed); unknown
// keys are rejected so configs cannot drift silently.
struct Scenario {
    std::string name;
    double L = 8.0;
    int N = 48;
    double lambda = 1.0;
    double gamma0 = 1.0;
    int k_max = 4;
    Descriptor potential;
    std::optional<Descriptor> potential_prime;
    std::vector<double> t_schedule;
    std::optional<ShellConfig> shell;
    std::vector<Vec3> zeta_samples;
    std::optional<ScanConfig> scan;
    LowFreqConfig lowfreq;
    SolverConfig solver;
    std::uint64_t seed = 0;
    std::string out_dir;

    // module precondition checks beyond what parsing enforces
    void validate() const;
};

Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

// Canonical JSON echo; re-parsing it yields an equivalent scenario.
std::string normalized_scenario(const Scenario& s);

// --- flat CSV projections ---------------------------------------------------
// Doubles print with round-trip precision; row order is deterministic.

// header exactly: zeta1,zeta2,zeta3,abs_zeta,t,re,im,err (failed points are
// omitted from the CSV and reported in the JSON report instead)
std::string shell_scan_csv(const std::vector<ShellScan>& scans);

// header: re_z,im_z,rho_perp_1,rho_perp_2,norm_estimate
std::string norm_decay_csv(const std::vector<NormDecaySample>& samples, const Frame& frame);

// header: re_z,im_z,rho_perp_1,rho_perp_2,indicator,flagged
std::string exceptional_scan_csv(const ExceptionalScan& scan, const Frame& frame);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace cgoscat
