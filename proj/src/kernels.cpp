#include "cgoscat/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>

namespace cgoscat::kernels {

namespace {
int g_workers = 0;  // 0 = runtime default
}

void set_workers(int n) {
    g_workers = n;
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#endif
}

int workers() {
#ifdef _OPENMP
    return g_workers > 0 ? g_workers : omp_get_max_threads();
#else
    return 1;
#endif
}

void hadamard(std::span<Complex> y, std::span<const Complex> x) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] *= x[static_cast<std::size_t>(i)];
}

void scale(std::span<Complex> y, Complex s) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] *= s;
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        y[static_cast<std::size_t>(i)] += a * x[static_cast<std::size_t>(i)];
}

void apply_separable_phase(std::span<Complex> f, int n, std::span<const Complex> p0,
                           std::span<const Complex> p1, std::span<const Complex> p2) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Complex pij = p0[static_cast<std::size_t>(i)] * p1[static_cast<std::size_t>(j)];
            Complex* row = f.data() + (static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                       static_cast<std::size_t>(j)) *
                                          static_cast<std::size_t>(n);
            for (int k = 0; k < n; ++k) row[k] *= pij * p2[static_cast<std::size_t>(k)];
        }
    }
}

void accumulate_separable(std::span<Complex> f, int n, Complex c, std::span<const Complex> p0,
                          std::span<const Complex> p1, std::span<const Complex> p2) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Complex cij = c * p0[static_cast<std::size_t>(i)] * p1[static_cast<std::size_t>(j)];
            Complex* row = f.data() + (static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                       static_cast<std::size_t>(j)) *
                                          static_cast<std::size_t>(n);
            for (int k = 0; k < n; ++k) row[k] += cij * p2[static_cast<std::size_t>(k)];
        }
    }
}

namespace {

template <class T>
T pairwise_block(const T* v, std::size_t n) {
    if (n <= 16) {
        T s{};
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_block(v, half) + pairwise_block(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_block(v.data(), v.size()); }
Complex pairwise_sum(std::span<const Complex> v) { return pairwise_block(v.data(), v.size()); }

Complex pairwise_dot(std::span<const Complex> a, std::span<const Complex> b) {
    const std::size_t n = a.size();
    std::vector<Complex> tmp(n);
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < sn; ++i)
        tmp[static_cast<std::size_t>(i)] =
            std::conj(a[static_cast<std::size_t>(i)]) * b[static_cast<std::size_t>(i)];
    return pairwise_sum(std::span<const Complex>(tmp));
}

double pairwise_norm2(std::span<const Complex> a) {
    const std::size_t n = a.size();
    std::vector<double> tmp(n);
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < sn; ++i) tmp[static_cast<std::size_t>(i)] = std::norm(a[static_cast<std::size_t>(i)]);
    return pairwise_sum(std::span<const double>(tmp));
}

Complex separable_inner(std::span<const Complex> f, int n, std::span<const Complex> p0,
                        std::span<const Complex> p1, std::span<const Complex> p2) {
    // per-(i,j) partial rows summed pairwise, then a fixed-order pairwise
    // combine; the row assignment is independent of the thread count
    std::vector<Complex> partial(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Complex* row = f.data() + (static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                             static_cast<std::size_t>(j)) *
                                                static_cast<std::size_t>(n);
            std::vector<Complex> terms(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) terms[static_cast<std::size_t>(k)] = row[k] * p2[static_cast<std::size_t>(k)];
            partial[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
                p0[static_cast<std::size_t>(i)] * p1[static_cast<std::size_t>(j)] *
                pairwise_sum(std::span<const Complex>(terms));
        }
    }
    return pairwise_sum(std::span<const Complex>(partial));
}

namespace ref {

void hadamard(std::span<Complex> y, std::span<const Complex> x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] *= x[i];
}

void scale(std::span<Complex> y, Complex s) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] *= s;
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void apply_separable_phase(std::span<Complex> f, int n, std::span<const Complex> p0,
                           std::span<const Complex> p1, std::span<const Complex> p2) {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Complex pij = p0[static_cast<std::size_t>(i)] * p1[static_cast<std::size_t>(j)];
            for (int k = 0; k < n; ++k, ++idx) f[idx] *= pij * p2[static_cast<std::size_t>(k)];
        }
}

void accumulate_separable(std::span<Complex> f, int n, Complex c, std::span<const Complex> p0,
                          std::span<const Complex> p1, std::span<const Complex> p2) {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Complex cij = c * p0[static_cast<std::size_t>(i)] * p1[static_cast<std::size_t>(j)];
            for (int k = 0; k < n; ++k, ++idx) f[idx] += cij * p2[static_cast<std::size_t>(k)];
        }
}

Complex separable_inner(std::span<const Complex> f, int n, std::span<const Complex> p0,
                        std::span<const Complex> p1, std::span<const Complex> p2) {
    std::vector<Complex> partial(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Complex* row = f.data() + (static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                             static_cast<std::size_t>(j)) *
                                                static_cast<std::size_t>(n);
            std::vector<Complex> terms(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) terms[static_cast<std::size_t>(k)] = row[k] * p2[static_cast<std::size_t>(k)];
            partial[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
                p0[static_cast<std::size_t>(i)] * p1[static_cast<std::size_t>(j)] *
                pairwise_sum(std::span<const Complex>(terms));
        }
    return pairwise_sum(std::span<const Complex>(partial));
}

}  // namespace ref

}  // namespace cgoscat::kernels
