#include "depf/linalg.hpp"

#include <cmath>
#include <string>

#include "depf/errors.hpp"

namespace depf {

SquareMatrix cholesky_lower(const SquareMatrix& sigma) {
    const std::size_t n = sigma.n;
    SquareMatrix l(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = sigma(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) {
                    throw NotPositiveDefinite("pivot " + std::to_string(i) + " = " +
                                              std::to_string(s));
                }
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

void matvec(const SquareMatrix& m, std::span<const double> x, std::span<double> y) {
    const std::size_t n = m.n;
    for (std::size_t r = 0; r < n; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < n; ++c) s += m(r, c) * x[c];
        y[r] = s;
    }
}

void solve_lower(const SquareMatrix& chol_l, std::span<const double> b, std::span<double> y) {
    const std::size_t n = chol_l.n;
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= chol_l(i, k) * y[k];
        y[i] = s / chol_l(i, i);
    }
}

double mahalanobis_sq(const SquareMatrix& chol_l, std::span<const double> x) {
    const std::size_t n = chol_l.n;
    std::vector<double> y(n);
    solve_lower(chol_l, x, y);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += y[i] * y[i];
    return s;
}

}  // namespace depf
