#include "cgoscat/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>

namespace cgoscat {

namespace {

// FFTW plan cache. Plans are created once per (n, sign) with FFTW_ESTIMATE
// (deterministic algorithm choice) and FFTW_UNALIGNED so they can be
// executed on any buffer via fftw_execute_dft.
class PlanCache {
  public:
    static fftw_plan get(int n, int sign) {
        static PlanCache cache;
        std::lock_guard<std::mutex> lock(cache.mu_);
        auto key = std::make_pair(n, sign);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;
        std::vector<Complex> dummy(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) *
                                   static_cast<std::size_t>(n));
        fftw_plan p = fftw_plan_dft_3d(n, n, n, reinterpret_cast<fftw_complex*>(dummy.data()),
                                       reinterpret_cast<fftw_complex*>(dummy.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache.plans_.emplace(key, p);
        return p;
    }

  private:
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

// premodulation along axis 0 for the half-shifted lattice: e^{-i pi s i / (N/2)}
std::vector<Complex> shift_premod(int n, double sign) {
    std::vector<Complex> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double phase = sign * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        p[static_cast<std::size_t>(i)] = std::polar(1.0, phase);
    }
    return p;
}

std::vector<Complex> ones(int n) { return std::vector<Complex>(static_cast<std::size_t>(n), Complex{1.0, 0.0}); }

}  // namespace

void dft3_inplace(std::vector<Complex>& data, int n, int sign) {
    fftw_plan p = PlanCache::get(n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
}

ComplexField forward_transform(const ComplexField& f, Lattice lat) {
    const Grid& g = f.grid;
    const int n = g.points_per_axis();
    const double h = g.spacing();
    const bool shifted = (lat == Lattice::ShiftedAxis0);

    ComplexField out = f;
    if (shifted) {
        auto p0 = shift_premod(n, -1.0);
        auto one = ones(n);
        kernels::apply_separable_phase(out.samples, n, p0, one, one);
    }
    dft3_inplace(out.samples, n, FFTW_FORWARD);

    // post phase: h^3 * (-1)^{a+b+c} * (i if shifted); e^{i pi m} = (-1)^{bin}
    const double h3 = h * h * h;
    const Complex shift_factor = shifted ? Complex{0.0, 1.0} : Complex{1.0, 0.0};
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const double sgn = ((a + b + c) % 2 == 0) ? 1.0 : -1.0;
                out.samples[g.index(a, b, c)] *= h3 * sgn * shift_factor;
            }
    return out;
}

ComplexField inverse_transform(const ComplexField& fhat, Lattice lat) {
    const Grid& g = fhat.grid;
    const int n = g.points_per_axis();
    const double h = g.spacing();
    const bool shifted = (lat == Lattice::ShiftedAxis0);

    ComplexField out = fhat;
    const double inv_scale = 1.0 / (h * h * h * static_cast<double>(g.size()));
    const Complex shift_factor = shifted ? Complex{0.0, -1.0} : Complex{1.0, 0.0};
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const double sgn = ((a + b + c) % 2 == 0) ? 1.0 : -1.0;
                out.samples[g.index(a, b, c)] *= inv_scale * sgn * shift_factor;
            }
    dft3_inplace(out.samples, n, FFTW_BACKWARD);
    if (shifted) {
        auto p0 = shift_premod(n, 1.0);
        auto one = ones(n);
        kernels::apply_separable_phase(out.samples, n, p0, one, one);
    }
    return out;
}

}  // namespace cgoscat
