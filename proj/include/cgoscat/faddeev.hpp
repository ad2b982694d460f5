#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cgoscat/field.hpp"
#include "cgoscat/potential.hpp"

namespace cgoscat {

// Complex momentum rho = z nu + rho_perp with nu a unit vector and
// rho_perp real, perpendicular to nu. Optionally energy-constrained:
// rho.rho = z^2 + |rho_perp|^2 = lambda (bilinear product).
struct ComplexMomentum {
    Vec3 nu{0, 0, 1};
    Complex z{0.0, 1.0};
    Vec3 rho_perp{};
    std::optional<double> lambda;

    CVec3 rho() const {
        return CVec3{z * nu.x + rho_perp.x, z * nu.y + rho_perp.y, z * nu.z + rho_perp.z};
    }
    double abs_rho() const { return std::sqrt(std::norm(z) + norm2(rho_perp)); }

    // Throws GridError-style Error on violated invariants.
    void validate() const;
};

// F(xi, z, rho_perp) = xi_par^2 + 2 z xi_par + |xi_perp|^2 - |rho_perp|^2,
// the conjugated Faddeev symbol; Im F = 2 Im z xi_par exactly.
Complex symbol_F(double xi_par, double xi_perp_sq, Complex z, double rho_perp_sq);
Complex symbol_F(const Vec3& xi, const Vec3& nu, Complex z, const Vec3& rho_perp);

// P0(rho) = Delta + 2 rho . D_w (positive-Laplacian convention), realized
// as the multiplier |xi|^2 + 2 rho . xi on the standard dual lattice.
ComplexField apply_P0(const ComplexMomentum& rho, const ComplexField& f);

// Same operator realized on the conjugated half-shifted lattice, the exact
// two-sided inverse of apply_G0 in sample space. Requires the grid's axis 0
// to coincide with nu.
ComplexField apply_P0_conjugated(const ComplexMomentum& rho, const ComplexField& f);

// G0(rho): right inverse of P0(rho) via the conjugated symbol 1/F on the
// half-shifted lattice. Throws RealZError when Im z = 0.
ComplexField apply_G0(const ComplexMomentum& rho, const ComplexField& f);

// L^2(box) adjoint of apply_G0 (needed by norm and indicator probes).
ComplexField apply_G0_adjoint(const ComplexMomentum& rho, const ComplexField& f);

// Distance from the half-shifted dual lattice to the singular circle
// {xi_par = 0, |xi_perp| = |rho_perp|} (independent of z by signature).
double singular_set_distance(const Grid& grid, const Vec3& rho_perp);

// Randomized power-iteration estimate of the weighted operator norm
// e^{-gamma<w>}L^2 -> e^{gamma<w>}L^2 of G0(rho), per sweep point.
struct NormDecaySample {
    double abs_rho;
    Complex z;
    Vec3 rho_perp;
    double estimate;
};
std::vector<NormDecaySample> norm_decay_probe(const std::vector<ComplexMomentum>& sweep,
                                              const Grid& grid, double gamma, int iterations,
                                              std::uint64_t seed);

// Finite-difference Cauchy-Riemann probe of z -> <g, V G0(z nu + rho_perp) h>
// at z0: returns |d/dx m + i d/dy m| / |m'(z0)| averaged over probe pairs.
struct AnalyticityResult {
    double residual;     // CR residual relative to the derivative scale
    double deriv_scale;  // |m'(z0)| averaged over probes
};
AnalyticityResult analyticity_probe(Complex z0, const Vec3& nu, const Vec3& rho_perp,
                                    const Potential& V, double delta, int probes,
                                    std::uint64_t seed);

}  // namespace cgoscat
