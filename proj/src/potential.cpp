#include "cgoscat/potential.hpp"

#include <cmath>

namespace cgoscat {

Potential make_potential(const Descriptor& d, double gamma0, const Grid& grid) {
    Potential V;
    V.field = sample_function(d, grid);
    V.gamma0 = gamma0;
    V.descriptor = d;
    const int n = grid.points_per_axis();
    double sup = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::size_t idx = grid.index(i, j, k);
                const Complex c = V.field.samples[idx];
                if (std::abs(c.imag()) > 1e-14 * (1.0 + std::abs(c.real())))
                    throw DescriptorError("make_potential: descriptor is not real-valued");
                V.field.samples[idx] = Complex{c.real(), 0.0};
                sup = std::max(sup, std::abs(c.real()) * std::exp(gamma0 * norm(grid.node(i, j, k))));
            }
    V.sup_weighted = sup;
    return V;
}

Potential zero_potential(double gamma0, const Grid& grid) {
    Potential V;
    V.field = ComplexField(grid);
    V.gamma0 = gamma0;
    V.descriptor = Descriptor{};
    V.sup_weighted = 0.0;
    return V;
}

Potential resample(const Potential& V, const Grid& grid) {
    if (!V.descriptor) throw DescriptorError("resample: potential has no closed-form descriptor");
    return make_potential(*V.descriptor, V.gamma0, grid);
}

}  // namespace cgoscat
