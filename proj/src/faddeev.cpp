#include "cgoscat/faddeev.hpp"

#include <cmath>
#include <limits>

#include "cgoscat/fft.hpp"
#include "cgoscat/rng.hpp"

namespace cgoscat {

void ComplexMomentum::validate() const {
    if (std::abs(norm(nu) - 1.0) > 1e-12) throw Error("ComplexMomentum: nu is not a unit vector");
    if (std::abs(dot(nu, rho_perp)) > 1e-12 * (1.0 + norm(rho_perp)))
        throw Error("ComplexMomentum: rho_perp not perpendicular to nu");
    if (lambda) {
        const Complex e = z * z + norm2(rho_perp);
        if (std::abs(e - *lambda) > 1e-10 * (1.0 + std::abs(*lambda)))
            throw Error("ComplexMomentum: energy constraint rho.rho = lambda violated");
    }
}

Complex symbol_F(double xi_par, double xi_perp_sq, Complex z, double rho_perp_sq) {
    return xi_par * xi_par + 2.0 * z * xi_par + xi_perp_sq - rho_perp_sq;
}

Complex symbol_F(const Vec3& xi, const Vec3& nu, Complex z, const Vec3& rho_perp) {
    const double xi_par = dot(xi, nu);
    const double xi_perp_sq = norm2(xi) - xi_par * xi_par;
    return symbol_F(xi_par, xi_perp_sq, z, norm2(rho_perp));
}

ComplexField apply_P0(const ComplexMomentum& rho, const ComplexField& f) {
    const Complex z = rho.z;
    const Vec3 nu = rho.nu;
    const Vec3 rp = rho.rho_perp;
    return apply_multiplier(f, Lattice::Standard, [&](const Vec3& xi) {
        return norm2(xi) + 2.0 * (z * dot(xi, nu) + dot(xi, rp));
    });
}

namespace {

// separable modulation e^{i sign * rho_perp . w}; the axis-0 component of
// rho_perp vanishes by the momentum invariant
void modulate(ComplexField& f, const Vec3& rho_perp, double sign) {
    const Grid& g = f.grid;
    const int n = g.points_per_axis();
    std::vector<Complex> p0(static_cast<std::size_t>(n)), p1(static_cast<std::size_t>(n)),
        p2(static_cast<std::size_t>(n));
    const double a0 = dot(g.frame()[0], rho_perp);
    const double a1 = dot(g.frame()[1], rho_perp);
    const double a2 = dot(g.frame()[2], rho_perp);
    for (int i = 0; i < n; ++i) {
        const double c = g.coord(i);
        p0[static_cast<std::size_t>(i)] = std::polar(1.0, sign * a0 * c);
        p1[static_cast<std::size_t>(i)] = std::polar(1.0, sign * a1 * c);
        p2[static_cast<std::size_t>(i)] = std::polar(1.0, sign * a2 * c);
    }
    kernels::apply_separable_phase(f.samples, n, p0, p1, p2);
}

void require_aligned(const Grid& g, const Vec3& nu, const char* what) {
    if (norm(g.frame()[0] - nu) > 1e-9)
        throw GridError(std::string(what) + ": grid axis 0 must coincide with nu");
}

// e^{-i rho_perp.w} Shift^-1[ m(F) Shift[ e^{+i rho_perp.w} f ] ]
template <class Fn>
ComplexField conjugated_symbol_apply(const ComplexMomentum& rho, const ComplexField& f, Fn&& m) {
    require_aligned(f.grid, rho.nu, "conjugated symbol");
    const Grid& g = f.grid;
    const int n = g.points_per_axis();
    const double dxi = g.dual_spacing();
    const double rp_sq = norm2(rho.rho_perp);
    const Complex z = rho.z;

    ComplexField work = f;
    modulate(work, rho.rho_perp, 1.0);
    ComplexField wh = forward_transform(work, Lattice::ShiftedAxis0);
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const double xi_par = g.dual_coord(a, 0.5);
                const double m1 = static_cast<double>(g.freq(b));
                const double m2 = static_cast<double>(g.freq(c));
                const double xi_perp_sq = dxi * dxi * (m1 * m1 + m2 * m2);
                wh.samples[g.index(a, b, c)] *= m(symbol_F(xi_par, xi_perp_sq, z, rp_sq));
            }
    work = inverse_transform(wh, Lattice::ShiftedAxis0);
    modulate(work, rho.rho_perp, -1.0);
    return work;
}

}  // namespace

ComplexField apply_P0_conjugated(const ComplexMomentum& rho, const ComplexField& f) {
    return conjugated_symbol_apply(rho, f, [](Complex F) { return F; });
}

ComplexField apply_G0(const ComplexMomentum& rho, const ComplexField& f) {
    if (rho.z.imag() == 0.0) throw RealZError("apply_G0: RealZ, Im z must be nonzero");
    return conjugated_symbol_apply(rho, f, [](Complex F) { return 1.0 / F; });
}

ComplexField apply_G0_adjoint(const ComplexMomentum& rho, const ComplexField& f) {
    if (rho.z.imag() == 0.0) throw RealZError("apply_G0_adjoint: RealZ, Im z must be nonzero");
    // reversing the sandwich swaps the modulations, and taking adjoints flips
    // their signs; the two cancel, so only the multiplier conjugates
    require_aligned(f.grid, rho.nu, "apply_G0_adjoint");
    ComplexField work = f;
    modulate(work, rho.rho_perp, 1.0);
    const Grid& g = f.grid;
    const int n = g.points_per_axis();
    const double dxi = g.dual_spacing();
    const double rp_sq = norm2(rho.rho_perp);
    const Complex z = rho.z;
    ComplexField wh = forward_transform(work, Lattice::ShiftedAxis0);
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const double xi_par = g.dual_coord(a, 0.5);
                const double m1 = static_cast<double>(g.freq(b));
                const double m2 = static_cast<double>(g.freq(c));
                const double xi_perp_sq = dxi * dxi * (m1 * m1 + m2 * m2);
                wh.samples[g.index(a, b, c)] *= std::conj(1.0 / symbol_F(xi_par, xi_perp_sq, z, rp_sq));
            }
    work = inverse_transform(wh, Lattice::ShiftedAxis0);
    modulate(work, rho.rho_perp, -1.0);
    return work;
}

double singular_set_distance(const Grid& grid, const Vec3& rho_perp) {
    const int n = grid.points_per_axis();
    const double dxi = grid.dual_spacing();
    const double r = norm(rho_perp);
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a) {
        const double xi_par = grid.dual_coord(a, 0.5);
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const double m1 = static_cast<double>(grid.freq(b));
                const double m2 = static_cast<double>(grid.freq(c));
                const double xi_perp = dxi * std::sqrt(m1 * m1 + m2 * m2);
                const double d = std::hypot(xi_par, xi_perp - r);
                best = std::min(best, d);
            }
    }
    return best;
}

std::vector<NormDecaySample> norm_decay_probe(const std::vector<ComplexMomentum>& sweep,
                                              const Grid& grid, double gamma, int iterations,
                                              std::uint64_t seed) {
    if (sweep.empty()) throw Error("norm_decay_probe: empty sweep");
    std::vector<NormDecaySample> out;
    out.reserve(sweep.size());
    for (const ComplexMomentum& rho : sweep) {
        rho.validate();
        // T = e^{-gamma<w>} G0 e^{-gamma<w>}; power-iterate T*T
        auto apply_T = [&](const ComplexField& x) {
            ComplexField y = x;
            apply_exp_weight(y, gamma, -1.0);
            y = apply_G0(rho, y);
            apply_exp_weight(y, gamma, -1.0);
            return y;
        };
        auto apply_Tadj = [&](const ComplexField& x) {
            ComplexField y = x;
            apply_exp_weight(y, gamma, -1.0);
            y = apply_G0_adjoint(rho, y);
            apply_exp_weight(y, gamma, -1.0);
            return y;
        };
        ComplexField x = random_field(grid, seed);
        double estimate = 0.0;
        for (int it = 0; it < iterations; ++it) {
            ComplexField y = apply_T(x);
            estimate = l2_norm(y) / l2_norm(x);
            x = apply_Tadj(y);
            const double nx = l2_norm(x);
            scale_field(x, 1.0 / nx);
        }
        out.push_back(NormDecaySample{rho.abs_rho(), rho.z, rho.rho_perp, estimate});
    }
    return out;
}

AnalyticityResult analyticity_probe(Complex z0, const Vec3& nu, const Vec3& rho_perp,
                                    const Potential& V, double delta, int probes,
                                    std::uint64_t seed) {
    if (z0.imag() == 0.0) throw RealZError("analyticity_probe: Im z0 must be nonzero");
    if (delta >= std::abs(z0.imag()) / 4.0)
        throw Error("analyticity_probe: step too large relative to distance to real axis");

    const Grid& grid = V.field.grid;
    double res_sum = 0.0, scale_sum = 0.0;
    for (int p = 0; p < probes; ++p) {
        ComplexField g = random_field(grid, split_seed(seed, "analyticity-g" + std::to_string(p)), true);
        ComplexField h = random_field(grid, split_seed(seed, "analyticity-h" + std::to_string(p)), true);
        auto m = [&](Complex z) {
            ComplexMomentum rho{nu, z, rho_perp, std::nullopt};
            ComplexField y = apply_G0(rho, h);
            multiply_pointwise(y, V.field);
            return inner_product(g, y);
        };
        const Complex mx = (m(z0 + delta) - m(z0 - delta)) / (2.0 * delta);
        const Complex my = (m(z0 + Complex{0.0, delta}) - m(z0 - Complex{0.0, delta})) / (2.0 * delta);
        const double r = std::abs(mx + Complex{0.0, 1.0} * my);
        const double s = std::abs(mx);
        if (s > 0.0) {
            res_sum += r / s;
            scale_sum += s;
        }
    }
    const double n = static_cast<double>(probes);
    return AnalyticityResult{res_sum / n, scale_sum / n};
}

}  // namespace cgoscat
