#pragma once

#include "cgoscat/field.hpp"

namespace cgoscat {

// Dual lattice selection. ShiftedAxis0 offsets xi_par by dxi/2 (the Faddeev
// regularization); Standard is the plain DFT lattice used by P0, the free
// resolvent and everything in the scattering module.
enum class Lattice { Standard, ShiftedAxis0 };

// fhat(xi) = h^3 * sum_w f(w) e^{-i xi.w} on the selected dual lattice.
// inverse_transform is the exact algebraic inverse (round trip to roundoff).
ComplexField forward_transform(const ComplexField& f, Lattice lat = Lattice::ShiftedAxis0);
ComplexField inverse_transform(const ComplexField& fhat, Lattice lat = Lattice::ShiftedAxis0);

// Raw unnormalized in-place 3D DFT of an n^3 cube; sign is FFTW convention
// (-1 forward, +1 backward). Used by the padded-kernel convolution.
void dft3_inplace(std::vector<Complex>& data, int n, int sign);

// out = InvT[ m(xi) * T[f] ] with m evaluated on the selected dual lattice.
template <class Fn>
ComplexField apply_multiplier(const ComplexField& f, Lattice lat, Fn&& m) {
    ComplexField fh = forward_transform(f, lat);
    const Grid& g = fh.grid;
    const int n = g.points_per_axis();
    const bool shifted = (lat == Lattice::ShiftedAxis0);
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                fh.samples[g.index(a, b, c)] *= m(g.dual_node(a, b, c, shifted));
    return inverse_transform(fh, lat);
}

}  // namespace cgoscat
