#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "cgoscat/grid.hpp"
#include "cgoscat/kernels.hpp"

namespace cgoscat {

// Complex-valued function sampled on a Grid, row-major with the nu-axis
// slowest. Fields are composable only when their grids are identical.
struct ComplexField {
    Grid grid;
    std::vector<Complex> samples;

    ComplexField() = default;
    explicit ComplexField(const Grid& g) : grid(g), samples(g.size(), Complex{0.0, 0.0}) {}

    Complex& at(int i, int j, int k) { return samples[grid.index(i, j, k)]; }
    Complex at(int i, int j, int k) const { return samples[grid.index(i, j, k)]; }

    bool finite() const;
};

// Throws GridError unless a and b live on the identical grid.
void require_same_grid(const ComplexField& a, const ComplexField& b, const char* what);

// In-place arithmetic (OpenMP kernels behind).
void add_scaled(ComplexField& y, Complex a, const ComplexField& x);  // y += a*x
void multiply_pointwise(ComplexField& y, const ComplexField& x);     // y *= x
void scale_field(ComplexField& y, Complex s);

// --- weighted norms -------------------------------------------------------

// gamma > 0 means the space e^{gamma<w>}L^2, i.e. the norm weights samples
// by e^{-gamma<w>}.
struct WeightedNormSpec {
    double gamma = 0.0;
};

double weighted_norm(const ComplexField& f, const WeightedNormSpec& spec);
inline double l2_norm(const ComplexField& f) { return weighted_norm(f, WeightedNormSpec{0.0}); }

// Pointwise multiply by e^{s*gamma<w>} (s = +1 or -1).
void apply_exp_weight(ComplexField& f, double gamma, double sign);

// h^3 * sum_w conj(a) * b, fixed-order pairwise reduction
Complex inner_product(const ComplexField& a, const ComplexField& b);

// --- closed-form descriptors ----------------------------------------------

struct GaussianTerm {
    double amplitude = 1.0;
    double sigma = 1.0;
    Vec3 center{};
};

// A * exp(-gamma0 * (sqrt(|w|^2 + r0^2) - r0)): smooth exponential decay
// with decay rate gamma0 and core radius r0.
struct ExpBumpTerm {
    double amplitude = 1.0;
    double gamma0 = 1.0;
    double r0 = 1.0;
};

struct PlaneWaveTerm {
    CVec3 rho;  // e^{i rho . w}
};

using DescriptorTerm = std::variant<GaussianTerm, ExpBumpTerm, PlaneWaveTerm>;

struct Descriptor {
    std::vector<DescriptorTerm> terms;
};

Complex evaluate(const Descriptor& d, const Vec3& w);
ComplexField sample_function(const Descriptor& d, const Grid& grid);

// --- bit-exact field I/O ---------------------------------------------------
// magic "CGOF", version u32=1 LE, N u32, L f64, frame 9*f64, then N^3
// (re, im) f64 pairs, row-major nu-slowest, all little-endian.

void write_field(const ComplexField& f, std::ostream& os);
void write_field_file(const ComplexField& f, const std::string& path,
                      const std::string& meta_json = "");
ComplexField read_field(std::istream& is);
ComplexField read_field_file(const std::string& path);

}  // namespace cgoscat
