#include "cgoscat/field.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <istream>

namespace cgoscat {

bool ComplexField::finite() const {
    for (const Complex& c : samples)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

void require_same_grid(const ComplexField& a, const ComplexField& b, const char* what) {
    if (a.grid != b.grid) throw GridError(std::string(what) + ": grid mismatch");
}

void add_scaled(ComplexField& y, Complex a, const ComplexField& x) {
    require_same_grid(y, x, "add_scaled");
    kernels::axpy(a, x.samples, y.samples);
}

void multiply_pointwise(ComplexField& y, const ComplexField& x) {
    require_same_grid(y, x, "multiply_pointwise");
    kernels::hadamard(y.samples, x.samples);
}

void scale_field(ComplexField& y, Complex s) { kernels::scale(y.samples, s); }

double weighted_norm(const ComplexField& f, const WeightedNormSpec& spec) {
    const int n = f.grid.points_per_axis();
    const double h = f.grid.spacing();
    std::vector<double> terms(f.samples.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::size_t idx = f.grid.index(i, j, k);
                const double wgt = std::exp(-spec.gamma * bracket(f.grid.node(i, j, k)));
                terms[idx] = std::norm(wgt * f.samples[idx]);
            }
    const double q = h * h * h * kernels::pairwise_sum(std::span<const double>(terms));
    return std::sqrt(q);
}

void apply_exp_weight(ComplexField& f, double gamma, double sign) {
    const int n = f.grid.points_per_axis();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::size_t idx = f.grid.index(i, j, k);
                f.samples[idx] *= std::exp(sign * gamma * bracket(f.grid.node(i, j, k)));
            }
}

Complex inner_product(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a, b, "inner_product");
    const double h = a.grid.spacing();
    return h * h * h * kernels::pairwise_dot(a.samples, b.samples);
}

Complex evaluate(const Descriptor& d, const Vec3& w) {
    Complex v{0.0, 0.0};
    for (const DescriptorTerm& t : d.terms) {
        if (const auto* g = std::get_if<GaussianTerm>(&t)) {
            v += g->amplitude * std::exp(-norm2(w - g->center) / (2.0 * g->sigma * g->sigma));
        } else if (const auto* e = std::get_if<ExpBumpTerm>(&t)) {
            v += e->amplitude * std::exp(-e->gamma0 * (std::sqrt(norm2(w) + e->r0 * e->r0) - e->r0));
        } else if (const auto* p = std::get_if<PlaneWaveTerm>(&t)) {
            const Complex phase = Complex{0.0, 1.0} * dot(p->rho, w);
            v += std::exp(phase);
        } else {
            throw DescriptorError("evaluate: unknown descriptor kind");
        }
    }
    return v;
}

ComplexField sample_function(const Descriptor& d, const Grid& grid) {
    ComplexField f(grid);
    const int n = grid.points_per_axis();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) f.samples[grid.index(i, j, k)] = evaluate(d, grid.node(i, j, k));
    if (!f.finite()) throw DescriptorError("sample_function: non-finite sample");
    return f;
}

namespace {

constexpr char kMagic[4] = {'C', 'G', 'O', 'F'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw IoError("read_field: Truncated header");
    return v;
}

double get_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw IoError("read_field: Truncated header");
    return v;
}

}  // namespace

void write_field(const ComplexField& f, std::ostream& os) {
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(f.grid.points_per_axis()));
    put_f64(os, f.grid.half_width());
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) put_f64(os, f.grid.frame()[a][c]);
    os.write(reinterpret_cast<const char*>(f.samples.data()),
             static_cast<std::streamsize>(f.samples.size() * sizeof(Complex)));
    if (!os) throw IoError("write_field: stream failure");
}

void write_field_file(const ComplexField& f, const std::string& path, const std::string& meta_json) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("write_field_file: cannot open " + path);
    write_field(f, os);
    if (!meta_json.empty()) {
        std::ofstream ms(path + ".meta.json");
        ms << meta_json << "\n";
    }
}

ComplexField read_field(std::istream& is) {
    char magic[4] = {};
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0) throw IoError("read_field: BadMagic");
    const std::uint32_t version = get_u32(is);
    if (version != kVersion) throw IoError("read_field: unsupported version");
    const std::uint32_t n = get_u32(is);
    const double L = get_f64(is);
    Frame frame;
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) frame[a][c] = get_f64(is);
    ComplexField f(make_grid(L, static_cast<int>(n), frame));
    is.read(reinterpret_cast<char*>(f.samples.data()),
            static_cast<std::streamsize>(f.samples.size() * sizeof(Complex)));
    if (is.gcount() != static_cast<std::streamsize>(f.samples.size() * sizeof(Complex)))
        throw IoError("read_field: Truncated payload");
    if (!f.finite()) throw IoError("read_field: non-finite sample");
    return f;
}

ComplexField read_field_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("read_field_file: cannot open " + path);
    return read_field(is);
}

}  // namespace cgoscat
