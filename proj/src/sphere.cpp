#include "cgoscat/sphere.hpp"

#include <cmath>
#include <numbers>

namespace cgoscat {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    const double pi = std::numbers::pi;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev-like initial guess
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int l = 2; l <= n; ++l) {
                const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / static_cast<double>(l);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

namespace {

// normalized associated Legendre \bar P_l^m(x) with Condon-Shortley phase,
// so that Y_l^m = \bar P_l^m(cos theta) e^{i m phi} is orthonormal on S^2
double normalized_plm(int l, int m, double x) {
    const double somx2 = std::sqrt(std::max(0.0, 1.0 - x * x));
    double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int k = 1; k <= m; ++k)
        pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * somx2;
    if (l == m) return pmm;
    double pm1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
    if (l == m + 1) return pm1;
    double plm = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        const double a = std::sqrt((4.0 * ll * ll - 1.0) / (static_cast<double>(ll) * ll - static_cast<double>(m) * m));
        const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - static_cast<double>(m) * m) /
                                   (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
        plm = a * (x * pm1 - b * pmm);
        pmm = pm1;
        pm1 = plm;
    }
    return plm;
}

}  // namespace

Complex sph_harm(int l, int m, const Vec3& dir) {
    const double ct = dir.z;
    const double phi = std::atan2(dir.y, dir.x);
    const int am = std::abs(m);
    const double plm = normalized_plm(l, am, ct);
    Complex y = plm * std::polar(1.0, am * phi);
    if (m < 0) y = (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
    return y;
}

SphereQuadrature SphereQuadrature::for_degree(int degree) {
    if (degree < 0) throw Error("SphereQuadrature: negative degree");
    SphereQuadrature q;
    q.degree = degree;
    const int nt = degree / 2 + 2;   // GL exact to 2 nt - 1 >= degree
    const int np = degree + 2;       // trapezoid exact for |freq| < np
    std::vector<double> xs, ws;
    gauss_legendre(nt, xs, ws);
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(np);
    for (int i = 0; i < nt; ++i) {
        const double ct = xs[static_cast<std::size_t>(i)];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < np; ++j) {
            const double phi = dphi * static_cast<double>(j);
            q.nodes.push_back(Vec3{st * std::cos(phi), st * std::sin(phi), ct});
            q.weights.push_back(ws[static_cast<std::size_t>(i)] * dphi);
        }
    }
    return q;
}

Complex evaluate(const HarmCoeffs& g, const Vec3& dir) {
    Complex v{};
    for (int k = 0; k <= g.k_max; ++k)
        for (int m = -k; m <= k; ++m) {
            const Complex c = g.at(k, m);
            if (c != Complex{}) v += c * sph_harm(k, m, dir);
        }
    return v;
}

Complex harm_inner(const HarmCoeffs& a, const HarmCoeffs& b) {
    if (a.k_max != b.k_max) throw Error("harm_inner: degree mismatch");
    Complex s{};
    for (std::size_t i = 0; i < a.c.size(); ++i) s += a.c[i] * std::conj(b.c[i]);
    return s;
}

HarmCoeffs project_harmonics(const std::vector<Complex>& values, const SphereQuadrature& quad,
                             double lambda, int k_max) {
    if (values.size() != quad.size()) throw Error("project_harmonics: size mismatch");
    if (quad.degree < 2 * k_max)
        throw Error("project_harmonics: quadrature order insufficient for k_max");
    HarmCoeffs out(lambda, k_max);
    for (int k = 0; k <= k_max; ++k)
        for (int m = -k; m <= k; ++m) {
            Complex s{};
            for (std::size_t qi = 0; qi < quad.size(); ++qi)
                s += quad.weights[qi] * values[qi] * std::conj(sph_harm(k, m, quad.nodes[qi]));
            out.at(k, m) = s;
        }
    return out;
}

std::vector<Vec3> fibonacci_sphere(int n) {
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = ga * static_cast<double>(i);
        pts.push_back(Vec3{r * std::cos(phi), r * std::sin(phi), z});
    }
    return pts;
}

}  // namespace cgoscat
