#pragma once

#include <string>
#include <vector>

#include "cgoscat/cgo.hpp"
#include "cgoscat/scattering.hpp"

namespace cgoscat {

// Momentum pair rho(t), rho'(t) attached to a target frequency zeta:
//   rho  = zeta/2 + s mu + i t nu,   rho' = zeta/2 - s mu - i t nu,
// with (nu, mu, zeta/|zeta|) the deterministic frame for zeta and
// s = sqrt(t^2 - |zeta|^2/4 + lambda), so rho.rho = rho'.rho' = lambda and
// rho + rho' = zeta. Throws SubcriticalTError when s^2 <= 0.
struct MomentumPair {
    ComplexMomentum rho;
    ComplexMomentum rho_prime;
    Frame frame;  // axis 0 = nu, the grid alignment the solves need
    double s = 0.0;
    double t = 0.0;
};

MomentumPair rho_param(const Vec3& zeta, double lambda, double t);

// h^3 sum e^{i zeta.w} (Va - Vb)(1 + va)(1 + vb); with rho + rho' = zeta this
// is the discrete pairing whose t -> infinity limit is Va^(zeta) - Vb^(zeta)
// under the convention f^(zeta) = Int f e^{+i zeta.w} dw.
Complex pairing_integral(const Potential& Va, const Potential& Vb, const ComplexField& va,
                         const ComplexField& vb, const Vec3& zeta);

// Quadrature self-check: the same sum on the stride-2 sub-lattice.
double pairing_quadrature_error(const Potential& Va, const Potential& Vb, const ComplexField& va,
                                const ComplexField& vb, const Vec3& zeta);

struct FourierRecovery {
    Complex value;           // recovered Va^(zeta) - Vb^(zeta)
    double quadrature_err;   // coarse-lattice discrepancy estimate
    double cgo_residual;     // worse of the two CGO residuals
    int iterations;          // total Krylov iterations across both solves
};

// Resamples both potentials on a zeta-aligned grid (same L and N as V),
// solves the two CGO problems and evaluates the pairing.
FourierRecovery recover_fourier(const Potential& V, const Potential& Vp, const Vec3& zeta,
                                double lambda, double t, const CgoOptions& opt = {});

// --- shell scans ------------------------------------------------------------

struct ShellPoint {
    Vec3 zeta;
    double t = 0.0;
    Complex value{};
    double err = 0.0;
    bool ok = false;
    std::string message;  // failure reason when !ok
};

struct ShellScan {
    double abs_zeta = 0.0;
    double t = 0.0;
    std::vector<ShellPoint> points;
};

// Recover Va^ - Vb^ on a sphere |zeta| = abs_zeta. Directions come in
// antipodal pairs from the Fibonacci sequence; per-point failures are
// recorded, not thrown.
ShellScan shell_scan(const Potential& V, const Potential& Vp, double abs_zeta, int n_points,
                     double lambda, double t, const CgoOptions& opt = {});

// --- low-frequency completion ----------------------------------------------

struct FourierSample {
    Vec3 zeta;
    Complex value{};
    double err = 0.0;
};

// Fit of shell samples in a centered Gaussian basis e^{-|zeta|^2 / (2 s_j^2)}.
// The width ladder is geometric with ratio (width_hi/width_lo)^(1/(n-1)),
// anchored at a log-linear prefit of the dominant decay (clamped to
// [width_lo, width_hi]); the Tikhonov term pulls toward the prefit's
// single-Gaussian model rather than toward zero, which keeps the
// extrapolation eval(0) stable under sample noise.
struct LowFreqModel {
    std::vector<double> widths;
    std::vector<Complex> coeffs;
    double fit_residual = 0.0;  // relative, on the supplied samples

    Complex eval(const Vec3& zeta) const;
    Complex eval_zero() const;
};

LowFreqModel lowfreq_complete(const std::vector<FourierSample>& samples,
                              double reg_weight = 1e-2, int n_widths = 8,
                              double width_lo = 0.5, double width_hi = 1.8);

// --- uniqueness experiment --------------------------------------------------

struct UniquenessReport {
    double lambda = 0.0;
    int k_max = 0;
    double s_discrepancy = 0.0;  // ||S - S'||_F
    double s_defect = 0.0;       // unitarity defect of S
    double s_defect_prime = 0.0;
    Complex cross_pairing_lhs{};  // Int (V - V') u+ conj(u'-), grid quadrature
    Complex cross_pairing_rhs{};  // the same pairing through the far fields
    ShellScan scan;               // recovered V^ - V'^ on one shell
    double max_shell_abs = 0.0;   // over the successful scan points
    bool scattering_match = false;
    bool potentials_match = false;
};

// Compares the two potentials at fixed energy: scattering matrices, one
// volume-vs-farfield pairing cross-check, and a recovery shell.
UniquenessReport uniqueness_experiment(const Potential& V, const Potential& Vp, double lambda,
                                       int k_max, double abs_zeta, int n_points, double t,
                                       double s_tol = 1e-3, double shell_tol = 1e-3,
                                       const CgoOptions& cgo_opt = {},
                                       const PoissonOptions& poisson_opt = {});

}  // namespace cgoscat
