#include <doctest.h>

#include "cgoscat/sphere.hpp"

using namespace cgoscat;

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(4, x, w);
    double total = 0.0, quad = 0.0, sixth = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        total += w[i];
        quad += w[i] * x[i] * x[i];
        sixth += w[i] * std::pow(x[i], 6);
    }
    CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(quad == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(sixth == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
}

TEST_CASE("sphere quadrature is orthonormal on the truncated harmonic basis") {
    const int k_max = 4;
    const SphereQuadrature quad = SphereQuadrature::for_degree(2 * k_max + 2);
    for (int l = 0; l <= k_max; ++l)
        for (int m = -l; m <= l; ++m)
            for (int lp = 0; lp <= k_max; ++lp)
                for (int mp = -lp; mp <= lp; ++mp) {
                    Complex acc{};
                    for (std::size_t q = 0; q < quad.size(); ++q)
                        acc += quad.weights[q] * sph_harm(l, m, quad.nodes[q]) *
                               std::conj(sph_harm(lp, mp, quad.nodes[q]));
                    const double expect = (l == lp && m == mp) ? 1.0 : 0.0;
                    CHECK(std::abs(acc - expect) < 1e-12);
                }
}

TEST_CASE("harmonic projection round-trips synthesized coefficient sets") {
    const int k_max = 3;
    HarmCoeffs g(2.0, k_max);
    g.at(0, 0) = Complex{1.0, -0.5};
    g.at(2, 1) = Complex{0.3, 0.7};
    g.at(3, -3) = Complex{-0.2, 0.1};
    const SphereQuadrature quad = SphereQuadrature::for_degree(2 * k_max + 2);
    std::vector<Complex> values(quad.size());
    for (std::size_t q = 0; q < quad.size(); ++q) values[q] = evaluate(g, quad.nodes[q]);
    const HarmCoeffs back = project_harmonics(values, quad, 2.0, k_max);
    for (std::size_t i = 0; i < g.c.size(); ++i) CHECK(std::abs(back.c[i] - g.c[i]) < 1e-12);

    // quadrature too coarse for the requested degree is rejected
    const SphereQuadrature low = SphereQuadrature::for_degree(2);
    std::vector<Complex> few(low.size(), Complex{});
    CHECK_THROWS_AS(project_harmonics(few, low, 2.0, k_max), Error);
}

TEST_CASE("fibonacci directions are unit length and deterministic") {
    const auto a = fibonacci_sphere(16);
    const auto b = fibonacci_sphere(16);
    REQUIRE(a.size() == 16);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(norm(a[i]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
        CHECK(a[i].z == b[i].z);
    }
}
