#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "cgoscat/field.hpp"

namespace cgoscat {

// One scenario seed reproduces everything: component streams are derived
// by hashing a tag into the base seed (FNV-1a + splitmix64 finalizer).
std::uint64_t split_seed(std::uint64_t base, std::string_view tag);

// Deterministic RNG. Gaussians use explicit Box-Muller on raw 64-bit
// draws so results are identical across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal();
    Complex cnormal() { return {normal(), normal()}; }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Independent complex gaussian samples per node; if band_limited, the top
// third of the spectrum (per axis, standard lattice) is zeroed.
ComplexField random_field(const Grid& grid, std::uint64_t seed, bool band_limited = false);

}  // namespace cgoscat
