#pragma once

#include <string>

#include "cgoscat/cgo.hpp"
#include "cgoscat/field.hpp"
#include "cgoscat/potential.hpp"
#include "cgoscat/sphere.hpp"

namespace cgoscat {

// --- incident waves --------------------------------------------------------

// Quadrature-discretized Herglotz wave sum_q w_q g(omega_q) e^{i sign sqrt(lambda) w.omega_q}.
// The discrete sum is an exact eigenfunction of Delta - lambda.
ComplexField herglotz_wave(double lambda, const HarmCoeffs& g, double sign, const Grid& grid,
                           const SphereQuadrature& quad);

// Free incoming Poisson operator: c * Int e^{-i sqrt(lambda) w.omega} g domega
// with c = lambda^{1/2} e^{-i pi/2} / (2 pi) in dimension 3.
ComplexField free_poisson(double lambda, const HarmCoeffs& g, const Grid& grid);

// --- free resolvent --------------------------------------------------------

// Multiplier realization of R(lambda +/- i0) applied to a decaying field:
// InvT[(|xi|^2 - lambda -/+ i eps)^{-1} T f], optionally with one Richardson
// step across eps and eps/2. sign=+1 pairs with the outgoing e^{+i sqrt(lambda) r}
// radial phase.
ComplexField free_resolvent(double lambda, int sign, const ComplexField& f, double eps,
                            bool richardson = true);

// grid-coupled default damping
inline double default_epsilon(double lambda, const Grid& g) {
    return std::sqrt(lambda) * g.dual_spacing() / 4.0;
}

// Free-space realization of R(lambda +/- i0) by zero-padded convolution with
// the closed-form kernel e^{+/- i sqrt(lambda) r}/(4 pi r); no periodization
// and no damping parameter. Used inside the Lippmann-Schwinger solves.
class HelmholtzConvolution {
  public:
    HelmholtzConvolution(const Grid& grid, double lambda, int sign);
    ComplexField apply(const ComplexField& f) const;
    const Grid& grid() const { return grid_; }

  private:
    Grid grid_;
    double lambda_;
    int sign_;
    int padded_;
    std::vector<Complex> kernel_hat_;
};

// --- eigenfunctions with prescribed asymptotics ----------------------------

struct PoissonOptions {
    double tol = 1e-8;
    int max_iter = 200;
    int restart = 30;
};

// Solve (Id + R0(lambda + i0) V) u = u0 by GMRES; iters_out optional.
ComplexField lippmann_schwinger(const Potential& V, const HelmholtzConvolution& R0,
                                const ComplexField& u0, const PoissonOptions& opt = {},
                                int* iters_out = nullptr);

// P_+(lambda) g: eigenfunction with incoming amplitude g.
ComplexField poisson_plus(const Potential& V, double lambda, const HarmCoeffs& g,
                          const Grid& grid, const PoissonOptions& opt = {});

// Full representation of a Lippmann-Schwinger solution: a discrete Herglotz
// measure for the incident wave plus the kernel-sum form of the scattered
// wave. eval() is exact off-grid (no interpolation, no periodization), which
// is what the annulus asymptotics need.
struct ScatteringSolution {
    double lambda = 0.0;
    int sign = +1;            // radiation sign of the scattered kernel
    bool conjugated = false;  // evaluate as the conjugate of the stored data
    Grid grid;
    std::vector<Vec3> inc_dirs;
    std::vector<Complex> inc_amps;
    double inc_sign = -1.0;  // incident phases e^{i inc_sign sqrt(lambda) dir.w}
    ComplexField u;          // grid samples of the solution itself
    ComplexField source;     // V u of the stored (unconjugated) representation

    Complex eval(const Vec3& w) const;
};

ScatteringSolution poisson_plus_full(const Potential& V, double lambda, const HarmCoeffs& g,
                                     const Grid& grid, const PoissonOptions& opt = {});
ScatteringSolution poisson_minus_full(const Potential& V, double lambda, const HarmCoeffs& g,
                                      const Grid& grid, const PoissonOptions& opt = {});

// P_-(lambda) g = conj(P_+(lambda) conj(g)): outgoing amplitude prescribed.
ComplexField poisson_minus(const Potential& V, double lambda, const HarmCoeffs& g,
                           const Grid& grid, const PoissonOptions& opt = {});

// coefficientwise conjugation of the function (not of the coefficients):
// conj(sum c Y) = sum c' Y with c'_{k,m} = (-1)^m conj(c_{k,-m})
HarmCoeffs harm_conj(const HarmCoeffs& g);

// --- scattering matrix -----------------------------------------------------

struct ScatteringMatrix {
    double lambda = 0.0;
    int k_max = 0;
    std::vector<Complex> s;  // row-major square of side (k_max+1)^2
    double unitarity_defect = 0.0;
    Complex kappa{};            // calibrated normalization
    std::string calibration;    // provenance note

    std::size_t side() const { return static_cast<std::size_t>((k_max + 1) * (k_max + 1)); }
    Complex& at(std::size_t r, std::size_t c) { return s[r * side() + c]; }
    Complex at(std::size_t r, std::size_t c) const { return s[r * side() + c]; }

    HarmCoeffs apply(const HarmCoeffs& g) const;
};

// S = I + kappa * K with K the harmonic projection of the far-field
// amplitudes of Lippmann-Schwinger solutions for incident harmonic waves.
// kappa is calibrated against the analytic Born matrix of a reference
// Gaussian; extraction on V = 0 gives exactly S = I.
ScatteringMatrix scattering_matrix(const Potential& V, double lambda, int k_max,
                                   const PoissonOptions& opt = {});

// Analytic Born matrix (S_born - I) for a centered Gaussian A e^{-|w|^2/(2 sigma^2)},
// evaluated with the same sphere quadrature used by the extraction.
std::vector<Complex> born_matrix_gaussian(double lambda, int k_max, double amplitude, double sigma);

// theoretical normalization -i sqrt(lambda) / (8 pi^2) of the raw amplitude matrix
inline Complex kappa_theory(double lambda) {
    const double pi = 3.14159265358979323846;
    return Complex{0.0, -1.0} * std::sqrt(lambda) / (8.0 * pi * pi);
}

double frobenius(const std::vector<Complex>& m);
double unitarity_defect(const ScatteringMatrix& S);

// header JSON + binary matrix block in the field-core number format
void write_smatrix(const ScatteringMatrix& S, const std::string& path);
ScatteringMatrix read_smatrix(const std::string& path);

// --- asymptotic data and boundary pairing ----------------------------------

struct AsymptoticData {
    HarmCoeffs g_minus;  // coefficient of e^{-i sqrt(lambda) r} / r
    HarmCoeffs g_plus;   // coefficient of e^{+i sqrt(lambda) r} / r
};

// Annulus fit on r in [0.6 L, 0.8 L]: harmonic projection per shell, then a
// two-term least-squares radial fit per (k, m).
AsymptoticData extract_asymptotics(const ComplexField& u, double lambda, int k_max,
                                   double r_lo_frac = 0.6, double r_hi_frac = 0.8,
                                   int n_shells = 8);

// Same annulus fit, but against the exact off-grid evaluation of a solution
// representation; this is the accurate route used by the pairing checks.
AsymptoticData extract_asymptotics(const ScatteringSolution& s, int k_max,
                                   double r_lo_frac = 0.6, double r_hi_frac = 0.8,
                                   int n_shells = 8);

struct PairingResult {
    Complex lhs;  // <u+, (H-lambda) u-> - <(H-lambda) u+, u->, grid quadrature
    Complex rhs;  // 2 i sqrt(lambda) (<g++, g-+> - <g+-, g-->), sphere formula
};

// resid_* are the known fields (H - lambda) u_* (often identically zero or
// -V u for eigenfunctions); asymptotic coefficient sets supplied explicitly.
PairingResult boundary_pairing(const ComplexField& u_plus, const ComplexField& resid_plus,
                               const ComplexField& u_minus, const ComplexField& resid_minus,
                               const HarmCoeffs& g_pp, const HarmCoeffs& g_pm,
                               const HarmCoeffs& g_mp, const HarmCoeffs& g_mm, double lambda);

// --- density of Poisson states ---------------------------------------------

// Relative residual of the weighted least-squares projection of
// u_rho = e^{i rho.w}(1 + v) onto span{P_+(lambda) Y_km : k <= k_max},
// restricted to the inner half-box and weighted by e^{-(gamma0/2)<w>}.
double density_residual(const Potential& V, double lambda, const CgoSolution& target, int k_max,
                        const PoissonOptions& opt = {});

}  // namespace cgoscat
