#include <doctest.h>

#include "cgoscat/fft.hpp"
#include "cgoscat/rng.hpp"

using namespace cgoscat;

TEST_CASE("transforms invert each other on both dual lattices") {
    const Grid g = make_grid(3.0, 16);
    const ComplexField f = random_field(g, 41);
    for (Lattice lat : {Lattice::Standard, Lattice::ShiftedAxis0}) {
        const ComplexField back = inverse_transform(forward_transform(f, lat), lat);
        double err = 0.0;
        for (std::size_t i = 0; i < f.samples.size(); ++i)
            err = std::max(err, std::abs(back.samples[i] - f.samples[i]));
        CHECK(err < 1e-12);
    }
}

TEST_CASE("Parseval identity h^3 sum |f|^2 = (2L)^-3 sum |fhat|^2") {
    const Grid g = make_grid(3.0, 16);
    const ComplexField f = random_field(g, 42);
    const double h = g.spacing();
    const double vol = 8.0 * g.half_width() * g.half_width() * g.half_width();
    double side = 0.0;
    for (const Complex& c : f.samples) side += std::norm(c);
    side *= h * h * h;
    for (Lattice lat : {Lattice::Standard, Lattice::ShiftedAxis0}) {
        const ComplexField fh = forward_transform(f, lat);
        double dual = 0.0;
        for (const Complex& c : fh.samples) dual += std::norm(c);
        dual /= vol;
        CHECK(dual == doctest::Approx(side).epsilon(1e-12));
    }
}

TEST_CASE("half-shifted exponentials are delta functions of the shifted transform") {
    const Grid g = make_grid(3.0, 16);
    const int a0 = 5, b0 = 2, c0 = 14;
    const Vec3 xi0 = g.dual_node(a0, b0, c0, true);
    ComplexField f(g);
    const int n = g.points_per_axis();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                f.at(i, j, k) = std::polar(1.0, dot(xi0, g.node(i, j, k)));
    const ComplexField fh = forward_transform(f, Lattice::ShiftedAxis0);
    const double vol = 8.0 * g.half_width() * g.half_width() * g.half_width();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Complex expect =
                    (i == a0 && j == b0 && k == c0) ? Complex{vol, 0.0} : Complex{};
                CHECK(std::abs(fh.at(i, j, k) - expect) < 1e-9);
            }
}

TEST_CASE("apply_multiplier with the unit symbol is the identity") {
    const Grid g = make_grid(3.0, 16);
    const ComplexField f = random_field(g, 43);
    const ComplexField out = apply_multiplier(f, Lattice::ShiftedAxis0, [](const Vec3&) {
        return Complex{1.0, 0.0};
    });
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        CHECK(std::abs(out.samples[i] - f.samples[i]) < 1e-12);
}
