#pragma once

#include <vector>

#include "cgoscat/errors.hpp"
#include "cgoscat/geometry.hpp"

namespace cgoscat {

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Orthonormal complex spherical harmonic Y_l^m evaluated at a unit vector.
Complex sph_harm(int l, int m, const Vec3& dir);

// Product quadrature on S^2: Gauss-Legendre in the polar cosine times a
// uniform trapezoid in azimuth. for_degree(d) integrates spherical
// polynomials of degree <= d exactly.
struct SphereQuadrature {
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    int degree = 0;

    static SphereQuadrature for_degree(int degree);
    std::size_t size() const { return nodes.size(); }
};

// Coefficients in the truncated harmonic basis, (k, m) lexicographic:
// k in [0, k_max], m in [-k, k]; index(k, m) = k^2 + (m + k).
struct HarmCoeffs {
    double lambda = 0.0;
    int k_max = 0;
    std::vector<Complex> c;

    HarmCoeffs() = default;
    HarmCoeffs(double lam, int kmax)
        : lambda(lam), k_max(kmax),
          c(static_cast<std::size_t>((kmax + 1) * (kmax + 1)), Complex{}) {}

    static std::size_t index(int k, int m) { return static_cast<std::size_t>(k * k + m + k); }
    Complex& at(int k, int m) { return c[index(k, m)]; }
    Complex at(int k, int m) const { return c[index(k, m)]; }
    std::size_t size() const { return c.size(); }

    // single harmonic Y_{k m}
    static HarmCoeffs unit(double lam, int kmax, int k, int m) {
        HarmCoeffs g(lam, kmax);
        g.at(k, m) = 1.0;
        return g;
    }
};

// g(omega) = sum over (k, m) of c_{km} Y_k^m(omega)
Complex evaluate(const HarmCoeffs& g, const Vec3& dir);

// Parseval inner product <a, b> = sum a_km conj(b_km)
Complex harm_inner(const HarmCoeffs& a, const HarmCoeffs& b);

// Project a function sampled at quadrature nodes onto harmonics <= k_max.
HarmCoeffs project_harmonics(const std::vector<Complex>& values, const SphereQuadrature& quad,
                             double lambda, int k_max);

// Repeatable quasi-uniform directions (Fibonacci sphere sequence).
std::vector<Vec3> fibonacci_sphere(int n);

}  // namespace cgoscat
