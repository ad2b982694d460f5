#pragma once

#include <cstdint>
#include <vector>

#include "cgoscat/faddeev.hpp"
#include "cgoscat/gmres.hpp"
#include "cgoscat/potential.hpp"

namespace cgoscat {

// CGO solution u_rho = e^{i rho.w}(1 + v_rho): the correction v solves
// (Id + G0(rho) V) v = -G0(rho) V.
struct CgoSolution {
    ComplexMomentum rho;
    ComplexField v;
    double residual = 0.0;  // PDE-form relative residual
    int iterations = 0;
    double indicator = 0.0;  // invertibility proxy; 0 when not computed
};

struct CgoOptions {
    double tol = 1e-8;
    int max_iter = 400;
    int restart = 30;
};

// Throws RealZError for real z, NonConvergenceError when the Krylov budget
// is exhausted (candidate exceptional point).
CgoSolution solve_cgo(const Potential& V, const ComplexMomentum& rho, const CgoOptions& opt = {});

// Randomized inverse-power estimate of the smallest singular value of
// Id + G0 V on the discretized weighted space e^{gamma<w>}L^2 with
// gamma = min(0.25, gamma0/4). Larger = safely invertible; probing
// failure is reported as 0, never thrown.
double exceptional_indicator(const Potential& V, const ComplexMomentum& rho, int probes,
                             std::uint64_t seed);

struct ScanPoint {
    Complex z;
    Vec3 rho_perp;
    double indicator;
    bool flagged;
};

struct ExceptionalScan {
    std::vector<ScanPoint> points;
    double threshold;
};

ExceptionalScan exceptional_scan(const Potential& V, const Vec3& nu,
                                 const std::vector<Complex>& z_samples,
                                 const std::vector<Vec3>& rho_perp_samples, int probes,
                                 std::uint64_t seed, double threshold = 1e-3);

// Weight exponent used for the discretized weighted space bookkeeping.
inline double indicator_gamma(double gamma0) { return std::min(0.25, gamma0 / 4.0); }

}  // namespace cgoscat
