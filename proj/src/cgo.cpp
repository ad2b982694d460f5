#include "cgoscat/cgo.hpp"

#include <cmath>

#include "cgoscat/rng.hpp"

namespace cgoscat {

CgoSolution solve_cgo(const Potential& V, const ComplexMomentum& rho, const CgoOptions& opt) {
    if (rho.z.imag() == 0.0) throw RealZError("solve_cgo: RealZ");
    rho.validate();
    const Grid& grid = V.field.grid;

    CgoSolution sol;
    sol.rho = rho;
    if (V.is_zero()) {
        sol.v = ComplexField(grid);
        sol.residual = 0.0;
        sol.iterations = 0;
        return sol;
    }

    // (Id + G0 V) v = -G0 V
    ComplexField rhs_f = apply_G0(rho, V.field);
    scale_field(rhs_f, -1.0);

    auto op = [&](const std::vector<Complex>& xv) {
        ComplexField x(grid);
        x.samples = xv;
        ComplexField vx = x;
        multiply_pointwise(vx, V.field);
        ComplexField g = apply_G0(rho, vx);
        add_scaled(g, 1.0, x);
        return g.samples;
    };

    GmresOptions gopt;
    gopt.tol = opt.tol;
    gopt.max_iter = opt.max_iter;
    gopt.restart = opt.restart;
    std::vector<Complex> x;
    GmresResult res = gmres_solve(op, rhs_f.samples, x, gopt);
    if (!res.converged)
        throw NonConvergenceError("solve_cgo: NonConvergence (candidate exceptional point)",
                                  res.iterations, res.residual);

    sol.v = ComplexField(grid);
    sol.v.samples = std::move(x);
    sol.iterations = res.iterations;

    // PDE-form residual: (Delta + 2 rho.D + V) v + V, via the conjugated
    // realization of P0 and pointwise multiplication
    ComplexField pde = apply_P0_conjugated(rho, sol.v);
    ComplexField vv = sol.v;
    multiply_pointwise(vv, V.field);
    add_scaled(pde, 1.0, vv);
    add_scaled(pde, 1.0, V.field);
    sol.residual = l2_norm(pde) / l2_norm(V.field);
    return sol;
}

double exceptional_indicator(const Potential& V, const ComplexMomentum& rho, int probes,
                             std::uint64_t seed) {
    if (rho.z.imag() == 0.0) throw RealZError("exceptional_indicator: RealZ");
    const Grid& grid = V.field.grid;
    const double gamma = indicator_gamma(V.gamma0);

    // A = W (Id + G0 V) W^{-1} with W = e^{-gamma<w>}; sigma_min(A) via
    // inverse power iteration on A^{-1} A^{-*}
    auto apply_A = [&](const std::vector<Complex>& xv) {
        ComplexField x(grid);
        x.samples = xv;
        apply_exp_weight(x, gamma, 1.0);  // W^{-1}
        ComplexField vx = x;
        multiply_pointwise(vx, V.field);
        ComplexField y = apply_G0(rho, vx);
        add_scaled(y, 1.0, x);
        apply_exp_weight(y, gamma, -1.0);  // W
        return y.samples;
    };
    auto apply_Aadj = [&](const std::vector<Complex>& xv) {
        ComplexField x(grid);
        x.samples = xv;
        apply_exp_weight(x, gamma, -1.0);
        ComplexField g = apply_G0_adjoint(rho, x);
        multiply_pointwise(g, V.field);  // V real
        add_scaled(g, 1.0, x);
        apply_exp_weight(g, gamma, 1.0);
        return g.samples;
    };

    GmresOptions gopt;
    gopt.tol = 1e-10;
    gopt.max_iter = 600;

    ComplexField x0 = random_field(grid, split_seed(seed, "indicator"));
    std::vector<Complex> x = x0.samples;
    {
        const double nx = std::sqrt(kernels::pairwise_norm2(x));
        kernels::scale(x, 1.0 / nx);
    }
    double growth = 1.0;
    for (int p = 0; p < probes; ++p) {
        std::vector<Complex> y, w;
        GmresResult r1 = gmres_solve(apply_Aadj, x, y, gopt);
        if (!r1.converged) return 0.0;
        GmresResult r2 = gmres_solve(apply_A, y, w, gopt);
        if (!r2.converged) return 0.0;
        const double nw = std::sqrt(kernels::pairwise_norm2(w));
        growth = nw;  // ||A^{-1} A^{-*} x|| -> 1 / sigma_min^2
        kernels::scale(w, 1.0 / nw);
        x = std::move(w);
    }
    return 1.0 / std::sqrt(growth);
}

ExceptionalScan exceptional_scan(const Potential& V, const Vec3& nu,
                                 const std::vector<Complex>& z_samples,
                                 const std::vector<Vec3>& rho_perp_samples, int probes,
                                 std::uint64_t seed, double threshold) {
    ExceptionalScan scan;
    scan.threshold = threshold;
    for (const Complex& z : z_samples) {
        if (z.imag() == 0.0) throw RealZError("exceptional_scan: sample with Im z = 0");
        for (const Vec3& rp : rho_perp_samples) {
            ComplexMomentum rho{nu, z, rp, std::nullopt};
            const double ind = exceptional_indicator(V, rho, probes, seed);
            scan.points.push_back(ScanPoint{z, rp, ind, ind < threshold});
        }
    }
    return scan;
}

}  // namespace cgoscat
