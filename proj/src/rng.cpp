#include "cgoscat/rng.hpp"

#include <cmath>
#include <numbers>

#include "cgoscat/fft.hpp"

namespace cgoscat {

std::uint64_t split_seed(std::uint64_t base, std::string_view tag) {
    std::uint64_t h = 1469598103934665603ull;  // FNV offset basis
    for (char c : tag) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 1099511628211ull;
    }
    std::uint64_t x = base ^ h;
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

ComplexField random_field(const Grid& grid, std::uint64_t seed, bool band_limited) {
    Rng rng(seed);
    ComplexField f(grid);
    for (Complex& c : f.samples) c = rng.cnormal();
    if (band_limited) {
        ComplexField fh = forward_transform(f, Lattice::Standard);
        const int n = grid.points_per_axis();
        const int cut = n / 3;  // keep |freq| < N/3 per axis
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    if (std::abs(grid.freq(a)) >= cut || std::abs(grid.freq(b)) >= cut ||
                        std::abs(grid.freq(c)) >= cut)
                        fh.samples[grid.index(a, b, c)] = Complex{0.0, 0.0};
                }
        f = inverse_transform(fh, Lattice::Standard);
    }
    return f;
}

}  // namespace cgoscat
