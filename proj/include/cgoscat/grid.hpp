#pragma once

#include <cstddef>
#include <numbers>

#include "cgoscat/errors.hpp"
#include "cgoscat/geometry.hpp"

namespace cgoscat {

// Periodic sampling box [-L, L)^3 with N points per axis and an orthonormal
// axis frame. Axis 0 (the nu-axis) is the slowest index, and its dual
// lattice is half-shifted: xi_par in dxi*(k + 1/2), so the Faddeev symbol
// Im F = 2 Im z xi_par never vanishes on a dual node.
class Grid {
  public:
    Grid() = default;

    double half_width() const { return L_; }
    int points_per_axis() const { return N_; }
    double spacing() const { return h_; }
    double dual_spacing() const { return dxi_; }
    const Frame& frame() const { return frame_; }

    std::size_t size() const {
        auto n = static_cast<std::size_t>(N_);
        return n * n * n;
    }

    // axis coordinate of sample index i: -L + i*h
    double coord(int i) const { return -L_ + h_ * static_cast<double>(i); }

    // world-space position of node (i, j, k); axis 0 slowest in memory
    Vec3 node(int i, int j, int k) const {
        return coord(i) * frame_[0] + coord(j) * frame_[1] + coord(k) * frame_[2];
    }

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * static_cast<std::size_t>(N_) + static_cast<std::size_t>(j)) *
                   static_cast<std::size_t>(N_) +
               static_cast<std::size_t>(k);
    }

    // signed dual index for FFT bin a: {0..N/2-1, -N/2..-1}
    int freq(int a) const { return a < N_ / 2 ? a : a - N_; }

    // dual coordinate along one axis; shift=0.5 on axis 0 for the shifted lattice
    double dual_coord(int a, double shift) const {
        return dxi_ * (static_cast<double>(freq(a)) + shift);
    }

    Vec3 dual_node(int a, int b, int c, bool shifted_axis0) const {
        double s = shifted_axis0 ? 0.5 : 0.0;
        return dual_coord(a, s) * frame_[0] + dual_coord(b, 0.0) * frame_[1] + dual_coord(c, 0.0) * frame_[2];
    }

    bool operator==(const Grid& o) const {
        return L_ == o.L_ && N_ == o.N_ && frame_ == o.frame_;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }

    friend Grid make_grid(double L, int N, const Frame& frame);

  private:
    double L_ = 0.0;
    int N_ = 0;
    double h_ = 0.0;
    double dxi_ = 0.0;
    Frame frame_;
};

inline Grid make_grid(double L, int N, const Frame& frame = identity_frame()) {
    if (L <= 0.0) throw GridError("make_grid: half width must be positive");
    if (N % 2 != 0) throw GridError("make_grid: OddN, points per axis must be even");
    if (N < 8) throw GridError("make_grid: N must be at least 8");
    if (frame.orthonormality_defect() > 1e-12)
        throw GridError("make_grid: NonOrthogonalFrame, axis frame not orthonormal to 1e-12");
    Grid g;
    g.L_ = L;
    g.N_ = N;
    g.h_ = 2.0 * L / static_cast<double>(N);
    g.dxi_ = std::numbers::pi / L;
    g.frame_ = frame;
    return g;
}

}  // namespace cgoscat
