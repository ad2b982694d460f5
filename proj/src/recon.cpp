#include "cgoscat/recon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace cgoscat {

MomentumPair rho_param(const Vec3& zeta, double lambda, double t) {
    if (!(lambda > 0.0)) throw ConfigError("rho_param: lambda must be positive");
    if (!(t > 0.0)) throw ConfigError("rho_param: t must be positive");
    const double s2 = t * t - norm2(zeta) / 4.0 + lambda;
    if (s2 <= 0.0) throw SubcriticalTError("rho_param: SubcriticalT, t^2 <= |zeta|^2/4 - lambda");

    MomentumPair mp;
    mp.frame = norm2(zeta) > 0.0 ? frame_for_zeta(zeta) : identity_frame();
    mp.s = std::sqrt(s2);
    mp.t = t;
    const Vec3 nu = mp.frame[0];
    const Vec3 mu = mp.frame[1];
    const Vec3 half = 0.5 * zeta;

    mp.rho.nu = nu;
    mp.rho.z = Complex{0.0, t};
    mp.rho.rho_perp = half + mp.s * mu;
    mp.rho.lambda = lambda;
    mp.rho.validate();

    mp.rho_prime.nu = nu;
    mp.rho_prime.z = Complex{0.0, -t};
    mp.rho_prime.rho_perp = half - mp.s * mu;
    mp.rho_prime.lambda = lambda;
    mp.rho_prime.validate();
    return mp;
}

namespace {

// (Va - Vb)(1 + va)(1 + vb) e^{i zeta.w}, phases applied in place
std::vector<Complex> pairing_integrand(const Potential& Va, const Potential& Vb,
                                       const ComplexField& va, const ComplexField& vb,
                                       const Vec3& zeta) {
    require_same_grid(Va.field, Vb.field, "pairing_integral");
    require_same_grid(Va.field, va, "pairing_integral");
    require_same_grid(Va.field, vb, "pairing_integral");
    const Grid& g = va.grid;
    const int n = g.points_per_axis();

    std::vector<Complex> q(g.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.size()); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        q[idx] = (Va.field.samples[idx] - Vb.field.samples[idx]) * (1.0 + va.samples[idx]) *
                 (1.0 + vb.samples[idx]);
    }
    std::vector<Complex> p[3];
    for (int a = 0; a < 3; ++a) {
        p[a].resize(static_cast<std::size_t>(n));
        const double qa = dot(zeta, g.frame()[a]);
        for (int i = 0; i < n; ++i) p[a][static_cast<std::size_t>(i)] = std::polar(1.0, qa * g.coord(i));
    }
    kernels::apply_separable_phase(q, n, p[0], p[1], p[2]);
    return q;
}

}  // namespace

Complex pairing_integral(const Potential& Va, const Potential& Vb, const ComplexField& va,
                         const ComplexField& vb, const Vec3& zeta) {
    const std::vector<Complex> q = pairing_integrand(Va, Vb, va, vb, zeta);
    const double h = va.grid.spacing();
    return h * h * h * kernels::pairwise_sum(std::span<const Complex>(q));
}

double pairing_quadrature_error(const Potential& Va, const Potential& Vb, const ComplexField& va,
                                const ComplexField& vb, const Vec3& zeta) {
    const std::vector<Complex> q = pairing_integrand(Va, Vb, va, vb, zeta);
    const Grid& g = va.grid;
    const int n = g.points_per_axis();
    const double h = g.spacing();
    const Complex full = h * h * h * kernels::pairwise_sum(std::span<const Complex>(q));

    std::vector<Complex> coarse;
    coarse.reserve(g.size() / 8);
    for (int i = 0; i < n; i += 2)
        for (int j = 0; j < n; j += 2)
            for (int k = 0; k < n; k += 2) coarse.push_back(q[g.index(i, j, k)]);
    const double h2 = 2.0 * h;
    const Complex half = h2 * h2 * h2 * kernels::pairwise_sum(std::span<const Complex>(coarse));
    return std::abs(full - half);
}

FourierRecovery recover_fourier(const Potential& V, const Potential& Vp, const Vec3& zeta,
                                double lambda, double t, const CgoOptions& opt) {
    const MomentumPair mp = rho_param(zeta, lambda, t);
    const Grid& base = V.field.grid;
    const Grid grid = make_grid(base.half_width(), base.points_per_axis(), mp.frame);

    const Potential Va = V.field.grid == grid ? V : resample(V, grid);
    const Potential Vb = Vp.field.grid == grid ? Vp : resample(Vp, grid);

    const CgoSolution sa = solve_cgo(Va, mp.rho, opt);
    const CgoSolution sb = solve_cgo(Vb, mp.rho_prime, opt);

    FourierRecovery rec;
    rec.value = pairing_integral(Va, Vb, sa.v, sb.v, zeta);
    rec.quadrature_err = pairing_quadrature_error(Va, Vb, sa.v, sb.v, zeta);
    rec.cgo_residual = std::max(sa.residual, sb.residual);
    rec.iterations = sa.iterations + sb.iterations;
    return rec;
}

ShellScan shell_scan(const Potential& V, const Potential& Vp, double abs_zeta, int n_points,
                     double lambda, double t, const CgoOptions& opt) {
    if (n_points <= 0) throw ConfigError("shell_scan: n_points must be positive");
    if (abs_zeta < 0.0) throw ConfigError("shell_scan: abs_zeta must be non-negative");

    // antipodal pairs, so conjugate symmetry of the real-potential transform
    // is visible in the output
    std::vector<Vec3> dirs;
    if (n_points % 2 == 0) {
        for (const Vec3& d : fibonacci_sphere(n_points / 2)) {
            dirs.push_back(d);
            dirs.push_back(-d);
        }
    } else {
        dirs = fibonacci_sphere(n_points);
    }

    ShellScan scan;
    scan.abs_zeta = abs_zeta;
    scan.t = t;
    for (const Vec3& d : dirs) {
        ShellPoint pt;
        pt.zeta = abs_zeta * d;
        pt.t = t;
        try {
            const FourierRecovery rec = recover_fourier(V, Vp, pt.zeta, lambda, t, opt);
            pt.value = rec.value;
            pt.err = rec.quadrature_err;
            pt.ok = true;
        } catch (const Error& e) {
            pt.ok = false;
            pt.message = e.what();
        }
        scan.points.push_back(std::move(pt));
    }
    return scan;
}

Complex LowFreqModel::eval(const Vec3& zeta) const {
    const double z2 = norm2(zeta);
    Complex v{};
    for (std::size_t j = 0; j < widths.size(); ++j)
        v += coeffs[j] * std::exp(-z2 / (2.0 * widths[j] * widths[j]));
    return v;
}

Complex LowFreqModel::eval_zero() const {
    Complex v{};
    for (const Complex& c : coeffs) v += c;
    return v;
}

LowFreqModel lowfreq_complete(const std::vector<FourierSample>& samples, double reg_weight,
                              int n_widths, double width_lo, double width_hi) {
    if (samples.empty()) throw ConfigError("lowfreq_complete: no samples");
    if (n_widths < 1 || !(width_lo > 0.0) || !(width_hi > width_lo))
        throw ConfigError("lowfreq_complete: bad width ladder");
    if (reg_weight < 0.0) throw ConfigError("lowfreq_complete: negative regularization");

    LowFreqModel model;
    model.widths.resize(static_cast<std::size_t>(n_widths));
    model.coeffs.assign(static_cast<std::size_t>(n_widths), Complex{});

    // log-linear prefit of the dominant decay: ln|v| = ln c - x / s^2 with
    // x = |zeta|^2 / 2, weighted by |v| so equal absolute noise enters evenly
    double sw = 0.0, sx = 0.0, sl = 0.0;
    for (const FourierSample& sm : samples) {
        const double a = std::abs(sm.value);
        if (a <= 0.0) continue;
        sw += a;
        sx += a * norm2(sm.zeta) / 2.0;
        sl += a * std::log(a);
    }
    if (sw <= 0.0) {
        // all-zero shell data: zero completion on the default ladder
        for (int j = 0; j < n_widths; ++j)
            model.widths[static_cast<std::size_t>(j)] =
                n_widths == 1 ? width_lo
                              : width_lo * std::pow(width_hi / width_lo,
                                                    static_cast<double>(j) /
                                                        static_cast<double>(n_widths - 1));
        model.fit_residual = 0.0;
        return model;
    }
    const double xb = sx / sw, lb = sl / sw;
    double sxx = 0.0, sxy = 0.0;
    for (const FourierSample& sm : samples) {
        const double a = std::abs(sm.value);
        if (a <= 0.0) continue;
        const double dx = norm2(sm.zeta) / 2.0 - xb;
        sxx += a * dx * dx;
        sxy += a * dx * (std::log(a) - lb);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    double s_hat = slope < 0.0 ? std::sqrt(-1.0 / slope) : width_hi;
    s_hat = std::clamp(s_hat, width_lo, width_hi);

    // geometric ladder anchored at the prefit width
    const int anchor = (n_widths - 1) / 2;
    const double ratio =
        n_widths > 1 ? std::pow(width_hi / width_lo, 1.0 / static_cast<double>(n_widths - 1)) : 1.0;
    for (int j = 0; j < n_widths; ++j)
        model.widths[static_cast<std::size_t>(j)] =
            s_hat * std::pow(ratio, static_cast<double>(j - anchor));

    const auto rows = static_cast<Eigen::Index>(samples.size());
    const auto cols = static_cast<Eigen::Index>(n_widths);
    Eigen::MatrixXcd A(rows, cols);
    Eigen::VectorXcd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& sm = samples[static_cast<std::size_t>(i)];
        y(i) = sm.value;
        const double z2 = norm2(sm.zeta);
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double s = model.widths[static_cast<std::size_t>(j)];
            A(i, j) = std::exp(-z2 / (2.0 * s * s));
        }
    }

    // single-column fit of the prefit Gaussian gives the reference model
    Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(cols);
    {
        Complex num{};
        double den = 0.0;
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double b = std::exp(-norm2(samples[static_cast<std::size_t>(i)].zeta) /
                                      (2.0 * s_hat * s_hat));
            num += b * y(i);
            den += b * b;
        }
        c0(anchor) = den > 0.0 ? num / den : Complex{};
    }

    // generalized Tikhonov: pull toward the reference model, not toward zero
    const Eigen::MatrixXcd G =
        A.adjoint() * A + reg_weight * reg_weight * Eigen::MatrixXcd::Identity(cols, cols);
    const Eigen::VectorXcd c = G.ldlt().solve(A.adjoint() * y + reg_weight * reg_weight * c0);

    for (Eigen::Index j = 0; j < cols; ++j) model.coeffs[static_cast<std::size_t>(j)] = c(j);
    const double yn = y.norm();
    model.fit_residual = yn > 0.0 ? (A * c - y).norm() / yn : 0.0;
    return model;
}

UniquenessReport uniqueness_experiment(const Potential& V, const Potential& Vp, double lambda,
                                       int k_max, double abs_zeta, int n_points, double t,
                                       double s_tol, double shell_tol, const CgoOptions& cgo_opt,
                                       const PoissonOptions& poisson_opt) {
    require_same_grid(V.field, Vp.field, "uniqueness_experiment");
    const Grid& grid = V.field.grid;

    UniquenessReport rep;
    rep.lambda = lambda;
    rep.k_max = k_max;

    const ScatteringMatrix S = scattering_matrix(V, lambda, k_max, poisson_opt);
    const ScatteringMatrix Sp = scattering_matrix(Vp, lambda, k_max, poisson_opt);
    rep.s_defect = S.unitarity_defect;
    rep.s_defect_prime = Sp.unitarity_defect;
    std::vector<Complex> diff(S.s.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = S.s[i] - Sp.s[i];
    rep.s_discrepancy = frobenius(diff);

    // volume pairing Int (V - V') u+ conj(u'-) against its far-field form
    {
        const HarmCoeffs g = HarmCoeffs::unit(lambda, k_max, 0, 0);
        const HarmCoeffs gp = k_max >= 1 ? HarmCoeffs::unit(lambda, k_max, 1, 0)
                                         : HarmCoeffs::unit(lambda, k_max, 0, 0);
        const ScatteringSolution up = poisson_plus_full(V, lambda, g, grid, poisson_opt);
        const ScatteringSolution um = poisson_minus_full(Vp, lambda, gp, grid, poisson_opt);
        ComplexField rp = up.u;
        multiply_pointwise(rp, V.field);
        scale_field(rp, -1.0);
        ComplexField rm = um.u;
        multiply_pointwise(rm, Vp.field);
        scale_field(rm, -1.0);
        const int k_ext = k_max + 2;
        const AsymptoticData ap = extract_asymptotics(up, k_ext);
        const AsymptoticData am = extract_asymptotics(um, k_ext);
        const PairingResult pr = boundary_pairing(up.u, rp, um.u, rm, ap.g_plus, ap.g_minus,
                                                  am.g_plus, am.g_minus, lambda);
        rep.cross_pairing_lhs = pr.lhs;
        rep.cross_pairing_rhs = pr.rhs;
    }

    rep.scan = shell_scan(V, Vp, abs_zeta, n_points, lambda, t, cgo_opt);
    for (const ShellPoint& pt : rep.scan.points)
        if (pt.ok) rep.max_shell_abs = std::max(rep.max_shell_abs, std::abs(pt.value));

    rep.scattering_match = rep.s_discrepancy <= s_tol;
    rep.potentials_match = rep.max_shell_abs <= shell_tol;
    return rep;
}

}  // namespace cgoscat
