#include <doctest.h>

#include "cgoscat/faddeev.hpp"
#include "cgoscat/fft.hpp"
#include "cgoscat/potential.hpp"
#include "cgoscat/rng.hpp"

using namespace cgoscat;

TEST_CASE("conjugated symbol formula") {
    // zero frequency
    CHECK(symbol_F(0.0, 0.0, Complex{1.0, 1.0}, 9.0) == Complex{-9.0, 0.0});
    // on the singular circle the symbol vanishes for real z
    CHECK(symbol_F(0.0, 9.0, Complex{2.0, 0.0}, 9.0) == Complex{});
    // worked arithmetic instance
    const Complex F = symbol_F(0.5, 1.0, Complex{2.0, 1.0}, 9.0);
    CHECK(F.real() == doctest::Approx(-5.75));
    CHECK(F.imag() == doctest::Approx(1.0));
    // Im F = 2 Im z xi_par exactly, across dual nodes
    const Grid g = make_grid(4.0, 8);
    const Complex z{0.7, -1.3};
    for (int a = 0; a < 8; ++a) {
        const double xi_par = g.dual_coord(a, 0.5);
        CHECK(symbol_F(xi_par, 2.0, z, 1.0).imag() == 2.0 * z.imag() * xi_par);
    }
}

TEST_CASE("singular set distance: half-shift bound and brute-force agreement") {
    const Grid g = make_grid(4.0, 16);
    CHECK(singular_set_distance(g, Vec3{0, 2.0, 1.0}) >= g.dual_spacing() / 2.0 - 1e-14);

    // rho_perp = 0 degenerates to the minimal dual-node norm
    double min_norm = 1e300;
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            for (int c = 0; c < 16; ++c)
                min_norm = std::min(min_norm, norm(g.dual_node(a, b, c, true)));
    CHECK(singular_set_distance(g, Vec3{}) == doctest::Approx(min_norm));

    // brute-force scan for a radius between two dual rings
    const Vec3 rp{0, 1.7 * g.dual_spacing(), 0};
    const double r = norm(rp);
    double brute = 1e300;
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            for (int c = 0; c < 16; ++c) {
                const Vec3 xi = g.dual_node(a, b, c, true);
                const double xi_par = xi.x;
                const double xi_perp = std::sqrt(norm2(xi) - xi_par * xi_par);
                brute = std::min(brute, std::hypot(xi_par, xi_perp - r));
            }
    CHECK(singular_set_distance(g, rp) == doctest::Approx(brute));
}

TEST_CASE("G0 is inverted by the conjugated P0 and has the stated adjoint") {
    const Grid g = make_grid(4.0, 16);
    const ComplexMomentum rho{{1, 0, 0}, {0.8, 1.1}, {0, 1.3, -0.4}, std::nullopt};
    const ComplexField f = random_field(g, 51, true);
    const ComplexField back = apply_P0_conjugated(rho, apply_G0(rho, f));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        num += std::norm(back.samples[i] - f.samples[i]);
        den += std::norm(f.samples[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-10);

    const ComplexField x = random_field(g, 52);
    const ComplexField y = random_field(g, 53);
    const Complex lhs = inner_product(apply_G0(rho, x), y);
    const Complex rhs = inner_product(x, apply_G0_adjoint(rho, y));
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
}

TEST_CASE("G0 requires a nonzero imaginary part of z") {
    const Grid g = make_grid(4.0, 8);
    const ComplexMomentum rho{{1, 0, 0}, {2.0, 0.0}, {0, 1.0, 0}, std::nullopt};
    CHECK_THROWS_AS(apply_G0(rho, ComplexField(g)), RealZError);
}

TEST_CASE("probe plumbing: single-point sweeps and the V=0 analyticity floor") {
    const Grid g = make_grid(4.0, 8);
    const std::vector<ComplexMomentum> sweep{
        ComplexMomentum{{1, 0, 0}, {0.0, 5.0}, {0, 1.0, 0}, std::nullopt}};
    const auto est = norm_decay_probe(sweep, g, 0.25, 5, 99);
    REQUIRE(est.size() == 1);
    CHECK(est[0].estimate > 0.0);
    CHECK(est[0].z == Complex{0.0, 5.0});

    const Potential V0 = zero_potential(1.0, g);
    const AnalyticityResult r = analyticity_probe({0.0, 2.0}, {1, 0, 0}, {0, 1.0, 0}, V0, 1e-3, 2, 7);
    CHECK(r.residual == 0.0);

    CHECK_THROWS_AS(analyticity_probe({0.0, 2.0}, {1, 0, 0}, {0, 1.0, 0}, V0, 1.0, 2, 7), Error);
}
