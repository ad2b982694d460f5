#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cgoscat/field.hpp"
#include "cgoscat/potential.hpp"
#include "cgoscat/rng.hpp"

using namespace cgoscat;

TEST_CASE("inner product and weighted norms against naive sums") {
    const Grid g = make_grid(3.0, 8);
    const ComplexField a = random_field(g, 11);
    const ComplexField b = random_field(g, 12);
    const double h = g.spacing();

    Complex ip{};
    double wn = 0.0;
    const double gamma = 0.4;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) {
                const std::size_t idx = g.index(i, j, k);
                ip += std::conj(a.samples[idx]) * b.samples[idx];
                const double w = std::exp(-gamma * bracket(g.node(i, j, k)));
                wn += std::norm(a.samples[idx] * w);
            }
    CHECK(std::abs(inner_product(a, b) - ip * h * h * h) < 1e-12);
    CHECK(weighted_norm(a, WeightedNormSpec{gamma}) ==
          doctest::Approx(std::sqrt(wn * h * h * h)).epsilon(1e-12));
}

TEST_CASE("exponential weight round trip") {
    const Grid g = make_grid(3.0, 8);
    const ComplexField a = random_field(g, 21);
    ComplexField b = a;
    apply_exp_weight(b, 0.7, +1.0);
    apply_exp_weight(b, 0.7, -1.0);
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        CHECK(std::abs(a.samples[i] - b.samples[i]) < 1e-12 * (1.0 + std::abs(a.samples[i])));
}

TEST_CASE("descriptor evaluation matches sampled fields") {
    Descriptor d;
    d.terms.push_back(GaussianTerm{0.5, 1.2, Vec3{0.3, -0.2, 0.1}});
    d.terms.push_back(ExpBumpTerm{0.2, 1.5, 0.8});
    const Grid g = make_grid(4.0, 8);
    const ComplexField f = sample_function(d, g);
    CHECK(f.at(3, 4, 5) == evaluate(d, g.node(3, 4, 5)));

    // gaussian closed form at its own center
    Descriptor pure;
    pure.terms.push_back(GaussianTerm{2.0, 0.7, Vec3{1.0, 0.0, 0.0}});
    CHECK(evaluate(pure, Vec3{1.0, 0.0, 0.0}).real() == doctest::Approx(2.0));
    CHECK(evaluate(pure, Vec3{1.0, 0.7, 0.0}).real() == doctest::Approx(2.0 * std::exp(-0.5)));
}

TEST_CASE("field files round-trip bit exactly and reject corrupt input") {
    namespace fs = std::filesystem;
    const Grid g = make_grid(2.0, 8);
    const ComplexField f = random_field(g, 33);
    const fs::path path = fs::temp_directory_path() / "cgoscat_test_field.cgof";
    write_field_file(f, path.string());
    const ComplexField back = read_field_file(path.string());
    CHECK(back.grid == f.grid);
    CHECK(back.samples == f.samples);

    // corrupt the magic
    {
        std::fstream s(path, std::ios::in | std::ios::out | std::ios::binary);
        s.put('X');
    }
    CHECK_THROWS_AS(read_field_file(path.string()), IoError);

    // truncate the payload
    write_field_file(f, path.string());
    fs::resize_file(path, fs::file_size(path) / 2);
    CHECK_THROWS_AS(read_field_file(path.string()), IoError);
    fs::remove(path);
}

TEST_CASE("potential construction records the weighted sup and rejects complex data") {
    const Grid g = make_grid(4.0, 8);
    Descriptor d;
    d.terms.push_back(ExpBumpTerm{1.0, 2.0, 0.5});
    const Potential V = make_potential(d, 2.0, g);
    CHECK(V.sup_weighted > 0.0);
    for (const Complex& c : V.field.samples) CHECK(c.imag() == 0.0);

    Descriptor pw;  // a single plane wave is complex-valued
    pw.terms.push_back(PlaneWaveTerm{CVec3{Complex{1.0, 0.0}, Complex{}, Complex{}}});
    CHECK_THROWS_AS(make_potential(pw, 1.0, g), Error);
}
