#include <doctest.h>

#include "cgoscat/recon.hpp"
#include "cgoscat/rng.hpp"

using namespace cgoscat;

namespace {

Potential gaussian_potential(double A, double sigma, double gamma0, const Grid& g,
                             const Vec3& center = Vec3{}) {
    Descriptor d;
    d.terms.push_back(GaussianTerm{A, sigma, center});
    return make_potential(d, gamma0, g);
}

double gauss_hat(double A, double sigma, double r) {
    return A * std::pow(2.0 * 3.14159265358979323846, 1.5) * sigma * sigma * sigma *
           std::exp(-sigma * sigma * r * r / 2.0);
}

}  // namespace

TEST_CASE("momentum pair: worked instance and random invariants") {
    const MomentumPair mp = rho_param(Vec3{3, 0, 0}, 1.0, 2.0);
    CHECK(mp.s == doctest::Approx(std::sqrt(2.75)).epsilon(1e-12));
    const CVec3 rho = mp.rho.rho();
    CHECK(std::abs(bilinear_dot(rho, rho) - 1.0) < 1e-12);
    // rho + rho' = zeta componentwise
    const CVec3 rp = mp.rho_prime.rho();
    CHECK(std::abs(rho.x + rp.x - 3.0) < 1e-12);
    CHECK(std::abs(rho.y + rp.y) < 1e-12);
    CHECK(std::abs(rho.z + rp.z) < 1e-12);

    Rng rng(81);
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec3 zeta{4.0 * (rng.uniform() - 0.5), 4.0 * (rng.uniform() - 0.5),
                        4.0 * (rng.uniform() - 0.5)};
        const double lambda = 0.5 + rng.uniform();
        const double t = 1.0 + 4.0 * rng.uniform();
        if (t * t <= norm2(zeta) / 4.0 - lambda) continue;
        const MomentumPair p = rho_param(zeta, lambda, t);
        const CVec3 a = p.rho.rho(), b = p.rho_prime.rho();
        CHECK(std::abs(bilinear_dot(a, a) - lambda) < 1e-10);
        CHECK(std::abs(bilinear_dot(b, b) - lambda) < 1e-10);
        CHECK(std::abs(a.x + b.x - zeta.x) < 1e-10);
        CHECK(std::abs(a.y + b.y - zeta.y) < 1e-10);
        CHECK(std::abs(a.z + b.z - zeta.z) < 1e-10);
    }
}

TEST_CASE("momentum pair boundary and degenerate cases") {
    // t^2 <= |zeta|^2/4 - lambda leaves no real transverse component
    CHECK_THROWS_AS(rho_param(Vec3{3, 0, 0}, 1.0, 1.0), SubcriticalTError);
    CHECK_THROWS_AS(rho_param(Vec3{3, 0, 0}, 1.0, -1.0), ConfigError);
    // zeta = 0 falls back to the identity frame
    const MomentumPair mp = rho_param(Vec3{}, 1.0, 2.0);
    CHECK(mp.frame == identity_frame());
}

TEST_CASE("pairing integral: exact zero on equal potentials") {
    const Grid g = make_grid(4.0, 16);
    const Potential V = gaussian_potential(0.1, 1.0, 1.0, g);
    const ComplexField va = random_field(g, 82);
    const ComplexField vb = random_field(g, 83);
    CHECK(pairing_integral(V, V, va, vb, Vec3{3, 0, 0}) == Complex{});
}

TEST_CASE("pairing integral with trivial corrections is the discrete Fourier transform") {
    const Grid g = make_grid(8.0, 64);
    const Potential V = gaussian_potential(0.1, 1.0, 1.0, g);
    const Potential V0 = zero_potential(1.0, g);
    const ComplexField zero(g);
    const Complex val = pairing_integral(V, V0, zero, zero, Vec3{3, 0, 0});
    CHECK(std::abs(val - 0.0174958) < 1e-3 * 0.0174958);
    // the stride-2 error estimate needs the coarse sublattice to resolve
    // e^{i zeta.w} V as well, hence the finer grid here
    CHECK(pairing_quadrature_error(V, V0, zero, zero, Vec3{3, 0, 0}) < 1e-4);
}

TEST_CASE("shell scans sample antipodal direction pairs") {
    const Grid g = make_grid(4.0, 8);
    const Potential V = gaussian_potential(0.0, 1.0, 1.0, g);  // zero amplitude: fast
    const ShellScan scan = shell_scan(V, V, 3.0, 8, 1.0, 2.0);
    REQUIRE(scan.points.size() == 8);
    for (std::size_t i = 0; i + 1 < scan.points.size(); i += 2) {
        CHECK(scan.points[i].zeta.x == doctest::Approx(-scan.points[i + 1].zeta.x));
        CHECK(scan.points[i].zeta.y == doctest::Approx(-scan.points[i + 1].zeta.y));
        CHECK(scan.points[i].zeta.z == doctest::Approx(-scan.points[i + 1].zeta.z));
    }
}

TEST_CASE("recovered samples at antipodal frequencies are conjugate for real potentials") {
    const Grid g = make_grid(6.0, 24);
    const Potential V = gaussian_potential(0.1, 1.0, 1.0, g);
    const Potential V0 = zero_potential(1.0, g);
    const FourierRecovery plus = recover_fourier(V, V0, Vec3{2.5, 0.7, -0.4}, 1.0, 3.0);
    const FourierRecovery minus = recover_fourier(V, V0, Vec3{-2.5, -0.7, 0.4}, 1.0, 3.0);
    CHECK(std::abs(minus.value - std::conj(plus.value)) < 0.05 * std::abs(plus.value));
}

TEST_CASE("translating the potential multiplies the recovered transform by a phase") {
    const Grid g = make_grid(8.0, 32);
    const Vec3 w0{0.5, 0.0, 0.0};
    const Potential V = gaussian_potential(0.1, 1.0, 1.0, g);
    const Potential Vt = gaussian_potential(0.1, 1.0, 1.0, g, w0);
    const Potential V0 = zero_potential(1.0, g);
    const Vec3 zeta{3, 0, 0};
    const Complex base = recover_fourier(V, V0, zeta, 1.0, 4.0).value;
    const Complex moved = recover_fourier(Vt, V0, zeta, 1.0, 4.0).value;
    const Complex phase = std::polar(1.0, dot(zeta, w0));
    CHECK(std::abs(moved - phase * base) < 0.05 * std::abs(base));
}

TEST_CASE("low-frequency completion is the identity on single-basis data") {
    std::vector<FourierSample> samples;
    for (double r : {2.2, 2.6, 3.0, 3.4})
        for (const Vec3& dir : fibonacci_sphere(8))
            samples.push_back(FourierSample{r * dir, Complex{std::exp(-r * r / 2.0), 0.0}, 0.0});
    const LowFreqModel model = lowfreq_complete(samples, 1e-8, 1, 1.0, 2.0);
    CHECK(model.fit_residual <= 1e-8);
    CHECK(std::abs(model.eval_zero() - 1.0) < 1e-6);
    CHECK(std::abs(model.eval(Vec3{1, 0, 0}) - std::exp(-0.5)) < 1e-6);

    CHECK_THROWS_AS(lowfreq_complete({}, 1e-6, 8, 0.5, 1.8), ConfigError);
    CHECK_THROWS_AS(lowfreq_complete(samples, 1e-6, 8, 1.8, 0.5), ConfigError);
}

TEST_CASE("gaussian transform helper agrees with the pinned reference values") {
    CHECK(gauss_hat(0.1, 1.0, 0.0) == doctest::Approx(1.574961).epsilon(1e-5));
    CHECK(gauss_hat(0.1, 1.0, 3.0) == doctest::Approx(0.0174958).epsilon(1e-4));
}
