#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cgoscat {

using Complex = std::complex<double>;

// Data-parallel inner loops used by the field and operator modules.
// Every kernel here has a serial twin in kernels::ref with identical
// semantics; tests assert bit-equality between the two and the benchmark
// tool compares their throughput. Reductions use fixed-order pairwise
// summation so results do not depend on the worker count.
namespace kernels {

// y[i] *= x[i]
void hadamard(std::span<Complex> y, std::span<const Complex> x);

// y[i] *= s
void scale(std::span<Complex> y, Complex s);

// y[i] += a * x[i]
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);

// f[(i*n + j)*n + k] *= p0[i] * p1[j] * p2[k]
void apply_separable_phase(std::span<Complex> f, int n, std::span<const Complex> p0,
                           std::span<const Complex> p1, std::span<const Complex> p2);

// f[(i*n + j)*n + k] += c * p0[i] * p1[j] * p2[k]
void accumulate_separable(std::span<Complex> f, int n, Complex c, std::span<const Complex> p0,
                          std::span<const Complex> p1, std::span<const Complex> p2);

// sum_{ijk} f[(i*n + j)*n + k] * p0[i] * p1[j] * p2[k], fixed reduction order
Complex separable_inner(std::span<const Complex> f, int n, std::span<const Complex> p0,
                        std::span<const Complex> p1, std::span<const Complex> p2);

// Fixed-order pairwise reductions (deterministic, worker-count independent).
double pairwise_sum(std::span<const double> v);
Complex pairwise_sum(std::span<const Complex> v);

// sum_i conj(a[i]) * b[i] with pairwise reduction
Complex pairwise_dot(std::span<const Complex> a, std::span<const Complex> b);

// sum_i |a[i]|^2 with pairwise reduction
double pairwise_norm2(std::span<const Complex> a);

// Serial reference implementations, kept for testing the parallel kernels.
namespace ref {
void hadamard(std::span<Complex> y, std::span<const Complex> x);
void scale(std::span<Complex> y, Complex s);
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
void apply_separable_phase(std::span<Complex> f, int n, std::span<const Complex> p0,
                           std::span<const Complex> p1, std::span<const Complex> p2);
void accumulate_separable(std::span<Complex> f, int n, Complex c, std::span<const Complex> p0,
                          std::span<const Complex> p1, std::span<const Complex> p2);
Complex separable_inner(std::span<const Complex> f, int n, std::span<const Complex> p0,
                        std::span<const Complex> p1, std::span<const Complex> p2);
}  // namespace ref

// Worker-count control for the OpenMP kernels (no-op without OpenMP).
void set_workers(int n);
int workers();

}  // namespace kernels
}  // namespace cgoscat
