#include <doctest.h>

#include "cgoscat/cgo.hpp"
#include "cgoscat/rng.hpp"

using namespace cgoscat;

namespace {

Potential gaussian_potential(double A, double sigma, double gamma0, const Grid& g) {
    Descriptor d;
    d.terms.push_back(GaussianTerm{A, sigma, Vec3{}});
    return make_potential(d, gamma0, g);
}

}  // namespace

TEST_CASE("zero potential gives the trivial CGO correction") {
    const Grid g = make_grid(4.0, 16);
    const Potential V0 = zero_potential(1.0, g);
    const ComplexMomentum rho{{1, 0, 0}, {0.0, 2.0}, {0, 1.0, 0}, std::nullopt};
    const CgoSolution sol = solve_cgo(V0, rho);
    CHECK(sol.iterations == 0);
    CHECK(sol.residual == 0.0);
    for (const Complex& c : sol.v.samples) CHECK(c == Complex{});
}

TEST_CASE("reported residual agrees with an independent PDE-form evaluation") {
    const Grid g = make_grid(6.0, 24);
    const Potential V = gaussian_potential(0.1, 1.0, 1.0, g);
    const ComplexMomentum rho{{1, 0, 0}, {0.0, 2.0}, {0, 1.5, 0.5}, std::nullopt};
    const CgoOptions opt{1e-8, 400, 30};
    const CgoSolution sol = solve_cgo(V, rho, opt);

    // (Delta + 2 rho.D + V) v + V, normalized by ||V||
    ComplexField resid = apply_P0_conjugated(rho, sol.v);
    ComplexField vterm = sol.v;
    for (Complex& c : vterm.samples) c += 1.0;
    multiply_pointwise(vterm, V.field);
    add_scaled(resid, 1.0, vterm);
    const double pde = l2_norm(resid) / l2_norm(V.field);
    CHECK(pde <= 10.0 * opt.tol);
    CHECK(sol.residual <= 10.0 * opt.tol);
}

TEST_CASE("solve_cgo rejects real z") {
    const Grid g = make_grid(4.0, 8);
    const Potential V0 = zero_potential(1.0, g);
    const ComplexMomentum rho{{1, 0, 0}, {2.0, 0.0}, {0, 1.0, 0}, std::nullopt};
    CHECK_THROWS_AS(solve_cgo(V0, rho), RealZError);
}

TEST_CASE("invertibility indicator: identity baseline and scan flags") {
    const Grid g = make_grid(4.0, 12);
    const Potential V0 = zero_potential(1.0, g);
    const ComplexMomentum rho{{1, 0, 0}, {0.0, 2.0}, {0, 1.0, 0}, std::nullopt};
    CHECK(exceptional_indicator(V0, rho, 2, 77) == doctest::Approx(1.0).epsilon(1e-12));

    // weak potential stays safely in the Neumann regime
    const Potential Vw = gaussian_potential(0.05, 1.0, 1.0, g);
    const double ind = exceptional_indicator(Vw, rho, 2, 77);
    CHECK(ind > 0.5);

    const ExceptionalScan scan = exceptional_scan(
        V0, {1, 0, 0}, {Complex{0.0, 2.0}, Complex{0.0, 5.0}}, {Vec3{0, 1.0, 0}}, 2, 77, 1e-3);
    REQUIRE(scan.points.size() == 2);
    for (const ScanPoint& p : scan.points) {
        CHECK(!p.flagged);
        CHECK(p.indicator == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("indicator gamma policy") {
    CHECK(indicator_gamma(4.0) == 0.25);
    CHECK(indicator_gamma(0.4) == doctest::Approx(0.1));
}
