#pragma once

#include <optional>

#include "cgoscat/field.hpp"

namespace cgoscat {

// Real exponentially-decaying potential V with declared decay rate gamma0.
struct Potential {
    ComplexField field;  // imaginary parts identically zero
    double gamma0 = 1.0;
    std::optional<Descriptor> descriptor;
    double sup_weighted = 0.0;  // sup |V(w)| e^{gamma0 |w|} over grid nodes

    bool is_zero() const {
        for (const Complex& c : field.samples)
            if (c != Complex{0.0, 0.0}) return false;
        return true;
    }
};

// Samples the descriptor, checks realness and records sup |V| e^{gamma0|w|}.
Potential make_potential(const Descriptor& d, double gamma0, const Grid& grid);

// Zero potential on a grid (descriptor: empty sum).
Potential zero_potential(double gamma0, const Grid& grid);

// Resample an existing descriptor-backed potential on another grid.
Potential resample(const Potential& V, const Grid& grid);

}  // namespace cgoscat
