#pragma once

#include <cmath>
#include <vector>

#include "cgoscat/kernels.hpp"

namespace cgoscat {

struct GmresOptions {
    double tol = 1e-8;   // relative residual target
    int max_iter = 400;  // total Krylov steps across restarts
    int restart = 30;
};

struct GmresResult {
    int iterations = 0;
    double residual = 0.0;  // relative
    bool converged = false;
};

// Restarted GMRES with modified Gram-Schmidt and Givens rotations.
// Op maps std::vector<Complex> -> std::vector<Complex>; inner products use
// the fixed-order pairwise reduction, so runs are deterministic.
template <class Op>
GmresResult gmres_solve(Op&& A, const std::vector<Complex>& b, std::vector<Complex>& x,
                        const GmresOptions& opt = {}) {
    const std::size_t n = b.size();
    if (x.size() != n) x.assign(n, Complex{0.0, 0.0});
    const double bnorm = std::sqrt(kernels::pairwise_norm2(b));
    GmresResult result;
    if (bnorm == 0.0) {
        x.assign(n, Complex{0.0, 0.0});
        result.converged = true;
        return result;
    }

    const int m = opt.restart;
    std::vector<std::vector<Complex>> V(static_cast<std::size_t>(m) + 1);
    std::vector<std::vector<Complex>> H(static_cast<std::size_t>(m) + 1,
                                        std::vector<Complex>(static_cast<std::size_t>(m), Complex{}));
    std::vector<Complex> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m)),
        s(static_cast<std::size_t>(m) + 1);

    int total_iters = 0;
    while (total_iters < opt.max_iter) {
        // residual of current iterate
        std::vector<Complex> r = A(x);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
        double beta = std::sqrt(kernels::pairwise_norm2(r));
        result.residual = beta / bnorm;
        if (result.residual <= opt.tol) {
            result.converged = true;
            return result;
        }

        V[0] = r;
        kernels::scale(V[0], 1.0 / beta);
        std::fill(s.begin(), s.end(), Complex{});
        s[0] = beta;

        int k = 0;
        for (; k < m && total_iters < opt.max_iter; ++k, ++total_iters) {
            std::vector<Complex> w = A(V[static_cast<std::size_t>(k)]);
            for (int i = 0; i <= k; ++i) {
                const Complex hik = kernels::pairwise_dot(V[static_cast<std::size_t>(i)], w);
                H[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = hik;
                kernels::axpy(-hik, V[static_cast<std::size_t>(i)], w);
            }
            const double hk1 = std::sqrt(kernels::pairwise_norm2(w));
            H[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(k)] = hk1;
            if (hk1 > 0.0) {
                V[static_cast<std::size_t>(k) + 1] = std::move(w);
                kernels::scale(V[static_cast<std::size_t>(k) + 1], 1.0 / hk1);
            } else {
                V[static_cast<std::size_t>(k) + 1].assign(n, Complex{});
            }

            // apply accumulated Givens rotations to the new column
            for (int i = 0; i < k; ++i) {
                const Complex t = std::conj(cs[static_cast<std::size_t>(i)]) *
                                      H[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                                  std::conj(sn[static_cast<std::size_t>(i)]) *
                                      H[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(k)];
                H[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(k)] =
                    -sn[static_cast<std::size_t>(i)] * H[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                    cs[static_cast<std::size_t>(i)] * H[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(k)];
                H[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = t;
            }
            // new rotation annihilating H[k+1][k]
            const Complex hkk = H[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
            const double denom = std::sqrt(std::norm(hkk) + hk1 * hk1);
            if (denom == 0.0) {
                cs[static_cast<std::size_t>(k)] = 1.0;
                sn[static_cast<std::size_t>(k)] = 0.0;
            } else {
                cs[static_cast<std::size_t>(k)] = hkk / denom;
                sn[static_cast<std::size_t>(k)] = hk1 / denom;
            }
            H[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] =
                std::conj(cs[static_cast<std::size_t>(k)]) * hkk +
                std::conj(sn[static_cast<std::size_t>(k)]) * hk1;
            H[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(k)] = Complex{};
            s[static_cast<std::size_t>(k) + 1] = -sn[static_cast<std::size_t>(k)] * s[static_cast<std::size_t>(k)];
            s[static_cast<std::size_t>(k)] = std::conj(cs[static_cast<std::size_t>(k)]) * s[static_cast<std::size_t>(k)];

            result.residual = std::abs(s[static_cast<std::size_t>(k) + 1]) / bnorm;
            if (result.residual <= opt.tol) {
                ++k;
                break;
            }
        }

        // back substitution and update
        std::vector<Complex> y(static_cast<std::size_t>(k));
        for (int i = k - 1; i >= 0; --i) {
            Complex t = s[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                t -= H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = t / H[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < k; ++i)
            kernels::axpy(y[static_cast<std::size_t>(i)], V[static_cast<std::size_t>(i)], x);

        result.iterations = total_iters;
        if (result.residual <= opt.tol) {
            result.converged = true;
            return result;
        }
    }
    result.iterations = total_iters;
    return result;
}

}  // namespace cgoscat
