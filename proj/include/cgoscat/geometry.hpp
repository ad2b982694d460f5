#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace cgoscat {

using Complex = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    return {v.x / n, v.y / n, v.z / n};
}

// Complex 3-vector, used for complex momenta rho = z*nu + rho_perp.
struct CVec3 {
    Complex x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};
};

inline Complex dot(const CVec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

// Bilinear (not sesquilinear) product: this is the rho.rho that the energy
// constraint rho.rho = lambda refers to.
inline Complex bilinear_dot(const CVec3& a, const CVec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

// <w> = (1 + |w|^2)^{1/2}, the japanese bracket used by all weighted norms.
inline double bracket(const Vec3& w) { return std::sqrt(1.0 + norm2(w)); }

// Right-handed orthonormal frame; axis(0) is the distinguished nu-axis.
struct Frame {
    std::array<Vec3, 3> axis{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};

    const Vec3& operator[](int i) const { return axis[static_cast<std::size_t>(i)]; }
    Vec3& operator[](int i) { return axis[static_cast<std::size_t>(i)]; }

    double orthonormality_defect() const {
        double d = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double g = dot(axis[static_cast<std::size_t>(i)], axis[static_cast<std::size_t>(j)]);
                d = std::max(d, std::abs(g - (i == j ? 1.0 : 0.0)));
            }
        return d;
    }

    bool operator==(const Frame& o) const {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (axis[static_cast<std::size_t>(i)][j] != o.axis[static_cast<std::size_t>(i)][j]) return false;
        return true;
    }
};

inline Frame identity_frame() { return Frame{}; }

// Deterministic orthonormal frame (nu, mu, zeta/|zeta|) with both nu and mu
// perpendicular to zeta. Used by the momentum family rho(t), rho'(t).
inline Frame frame_for_zeta(const Vec3& zeta) {
    Vec3 e3 = normalized(zeta);
    // pick the coordinate axis least aligned with zeta as seed
    Vec3 seed{1, 0, 0};
    double ax = std::abs(e3.x), ay = std::abs(e3.y), az = std::abs(e3.z);
    if (ay <= ax && ay <= az) seed = Vec3{0, 1, 0};
    else if (az <= ax && az <= ay) seed = Vec3{0, 0, 1};
    Vec3 nu = normalized(cross(e3, seed));
    Vec3 mu = cross(e3, nu);
    Frame f;
    f[0] = nu;
    f[1] = mu;
    f[2] = e3;
    return f;
}

}  // namespace cgoscat
