#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace depf {

/// Dense square matrix, row-major. State dimensionality here is at most 7,
/// so everything below is plain O(n^3) with no blocking.
struct SquareMatrix {
    std::size_t n = 0;
    std::vector<double> data;  // n*n, row-major

    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n_) : n(n_), data(n_ * n_, 0.0) {}

    static SquareMatrix identity(std::size_t n_) {
        SquareMatrix m(n_);
        for (std::size_t i = 0; i < n_; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }
};

/// L such that L*L^T = sigma, L lower-triangular with positive diagonal.
/// Throws NotPositiveDefinite when a pivot is <= 0.
SquareMatrix cholesky_lower(const SquareMatrix& sigma);

/// y = m * x (dense).
void matvec(const SquareMatrix& m, std::span<const double> x, std::span<double> y);

/// Solve L * y = b for lower-triangular L (forward substitution).
void solve_lower(const SquareMatrix& chol_l, std::span<const double> b, std::span<double> y);

/// x^T * (L*L^T)^{-1} * x via one forward solve: ||L^{-1} x||^2.
double mahalanobis_sq(const SquareMatrix& chol_l, std::span<const double> x);

}  // namespace depf
