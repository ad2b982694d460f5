// Throughput comparison between the OpenMP kernels and their serial
// reference twins, on FFT-sized cubes.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgoscat/kernels.hpp"
#include "cgoscat/rng.hpp"

using namespace cgoscat;

namespace {

double time_seconds(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return dt.count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kernel throughput: OpenMP vs serial reference"};
    int n = 64;
    int reps = 20;
    int workers = 0;
    app.add_option("--n", n, "cube edge length");
    app.add_option("--reps", reps, "repetitions per measurement");
    app.add_option("--workers", workers, "worker threads (0 = runtime default)");
    CLI11_PARSE(app, argc, argv);

    if (workers > 0) kernels::set_workers(workers);
    const std::size_t size = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) *
                             static_cast<std::size_t>(n);

    Rng rng(20260825);
    std::vector<Complex> a(size), b(size);
    for (std::size_t i = 0; i < size; ++i) {
        a[i] = rng.cnormal();
        b[i] = rng.cnormal();
    }
    std::vector<Complex> p0(static_cast<std::size_t>(n)), p1 = p0, p2 = p0;
    for (int i = 0; i < n; ++i) {
        p0[static_cast<std::size_t>(i)] = std::polar(1.0, 0.1 * i);
        p1[static_cast<std::size_t>(i)] = std::polar(1.0, 0.2 * i);
        p2[static_cast<std::size_t>(i)] = std::polar(1.0, 0.3 * i);
    }

    struct Case {
        std::string name;
        std::function<void()> par;
        std::function<void()> ser;
    };
    std::vector<Complex> y = a;
    Complex sink{};
    const std::vector<Case> cases = {
        {"hadamard", [&] { kernels::hadamard(y, b); }, [&] { kernels::ref::hadamard(y, b); }},
        {"scale", [&] { kernels::scale(y, Complex{0.99, 0.01}); },
         [&] { kernels::ref::scale(y, Complex{0.99, 0.01}); }},
        {"axpy", [&] { kernels::axpy(Complex{0.5, -0.25}, b, y); },
         [&] { kernels::ref::axpy(Complex{0.5, -0.25}, b, y); }},
        {"separable-phase", [&] { kernels::apply_separable_phase(y, n, p0, p1, p2); },
         [&] { kernels::ref::apply_separable_phase(y, n, p0, p1, p2); }},
        {"accumulate-separable",
         [&] { kernels::accumulate_separable(y, n, Complex{0.1, 0.1}, p0, p1, p2); },
         [&] { kernels::ref::accumulate_separable(y, n, Complex{0.1, 0.1}, p0, p1, p2); }},
        {"separable-inner", [&] { sink += kernels::separable_inner(a, n, p0, p1, p2); },
         [&] { sink += kernels::ref::separable_inner(a, n, p0, p1, p2); }},
    };

    const double mib = static_cast<double>(size) * sizeof(Complex) / (1024.0 * 1024.0);
    std::printf("cube %d^3 (%.1f MiB per array), %d workers, %d reps\n", n, mib,
                kernels::workers(), reps);
    std::printf("%-22s %12s %12s %8s\n", "kernel", "omp GiB/s", "serial GiB/s", "speedup");
    for (const Case& c : cases) {
        const double tp = time_seconds(c.par, reps);
        const double ts = time_seconds(c.ser, reps);
        const double gib = mib / 1024.0;
        std::printf("%-22s %12.3f %12.3f %8.2f\n", c.name.c_str(), gib / tp, gib / ts, ts / tp);
    }
    // keep the reduction result alive so the compiler cannot drop the loops
    std::printf("(checksum %g)\n", sink.real());
    return 0;
}
