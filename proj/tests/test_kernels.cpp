#include <doctest.h>

#include <vector>

#include "cgoscat/kernels.hpp"
#include "cgoscat/rng.hpp"

using namespace cgoscat;

namespace {

std::vector<Complex> random_vec(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Complex> v(n);
    for (Complex& c : v) c = rng.cnormal();
    return v;
}

}  // namespace

TEST_CASE("parallel kernels are bit-identical to the serial reference") {
    const int n = 12;
    const auto sz = static_cast<std::size_t>(n * n * n);
    const std::vector<Complex> base = random_vec(sz, 101);
    const std::vector<Complex> x = random_vec(sz, 102);
    const std::vector<Complex> p0 = random_vec(static_cast<std::size_t>(n), 103);
    const std::vector<Complex> p1 = random_vec(static_cast<std::size_t>(n), 104);
    const std::vector<Complex> p2 = random_vec(static_cast<std::size_t>(n), 105);
    const Complex a{0.3, -0.8};

    kernels::set_workers(3);
    std::vector<Complex> yp, ys;

    yp = base;
    ys = base;
    kernels::hadamard(yp, x);
    kernels::ref::hadamard(ys, x);
    CHECK(yp == ys);

    yp = base;
    ys = base;
    kernels::scale(yp, a);
    kernels::ref::scale(ys, a);
    CHECK(yp == ys);

    yp = base;
    ys = base;
    kernels::axpy(a, x, yp);
    kernels::ref::axpy(a, x, ys);
    CHECK(yp == ys);

    yp = base;
    ys = base;
    kernels::apply_separable_phase(yp, n, p0, p1, p2);
    kernels::ref::apply_separable_phase(ys, n, p0, p1, p2);
    CHECK(yp == ys);

    yp = base;
    ys = base;
    kernels::accumulate_separable(yp, n, a, p0, p1, p2);
    kernels::ref::accumulate_separable(ys, n, a, p0, p1, p2);
    CHECK(yp == ys);

    const Complex ip = kernels::separable_inner(base, n, p0, p1, p2);
    const Complex is = kernels::ref::separable_inner(base, n, p0, p1, p2);
    CHECK(ip == is);
    kernels::set_workers(1);
}

TEST_CASE("pairwise reductions match naive sums and ignore worker count") {
    const std::vector<Complex> v = random_vec(1000, 7);
    Complex naive{};
    for (const Complex& c : v) naive += c;
    const Complex p = kernels::pairwise_sum(std::span<const Complex>(v));
    CHECK(std::abs(p - naive) < 1e-10);

    kernels::set_workers(2);
    CHECK(kernels::pairwise_sum(std::span<const Complex>(v)) == p);
    kernels::set_workers(1);
    CHECK(kernels::pairwise_sum(std::span<const Complex>(v)) == p);

    const std::vector<Complex> w = random_vec(1000, 8);
    Complex dn{};
    double nn = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        dn += std::conj(v[i]) * w[i];
        nn += std::norm(v[i]);
    }
    CHECK(std::abs(kernels::pairwise_dot(v, w) - dn) < 1e-10);
    CHECK(kernels::pairwise_norm2(v) == doctest::Approx(nn).epsilon(1e-12));
}
