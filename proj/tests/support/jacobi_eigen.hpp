#pragma once

// Test-only eigenvalue oracle: cyclic Jacobi rotations for small symmetric
// matrices. Independent of the library's Cholesky-based code paths.

#include <cmath>
#include <vector>

#include "depf/linalg.hpp"

namespace test_support {

inline std::vector<double> symmetric_eigenvalues(depf::SquareMatrix m) {
    const std::size_t n = m.n;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(m(p, q)) < 1e-300) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i);
    return eig;
}

inline double min_eigenvalue(const depf::SquareMatrix& m) {
    const auto eig = symmetric_eigenvalues(m);
    double mn = eig[0];
    for (double e : eig) mn = std::min(mn, e);
    return mn;
}

}  // namespace test_support
