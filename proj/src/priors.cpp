#include "depf/priors.hpp"

#include <cmath>
#include <string>

#include "depf/errors.hpp"

namespace depf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kRejectionBudget = 10000;

double two_pi_angle(double dy, double dx) {
    double a = std::atan2(dy, dx);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

/// Vertices of the star polygon, outer spike at angle pi/2 (pointing up).
std::vector<double> star_vertices(const StarPrior& star) {
    const int m = 2 * star.points;
    std::vector<double> v(2 * m);
    for (int k = 0; k < m; ++k) {
        const double r = (k % 2 == 0) ? star.outer_radius : star.inner_radius;
        const double a = kPi / 2.0 + 2.0 * kPi * k / m;
        v[2 * k] = star.center[0] + r * std::cos(a);
        v[2 * k + 1] = star.center[1] + r * std::sin(a);
    }
    return v;
}

/// Even-odd ray crossing test.
bool point_in_polygon(std::span<const double> verts, double x, double y) {
    const std::size_t m = verts.size() / 2;
    bool inside = false;
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const double xi = verts[2 * i], yi = verts[2 * i + 1];
        const double xj = verts[2 * j], yj = verts[2 * j + 1];
        const bool crosses = (yi > y) != (yj > y);
        if (crosses && x < (xj - xi) * (y - yi) / (yj - yi) + xi) inside = !inside;
    }
    return inside;
}

bool ring_contains(const RingSectorPrior& ring, double x, double y) {
    const double dx = x - ring.center[0];
    const double dy = y - ring.center[1];
    const double r = std::hypot(dx, dy);
    if (r < ring.inner_radius || r > ring.outer_radius) return false;
    if (ring.fraction >= 1.0) return true;
    return two_pi_angle(dy, dx) < 2.0 * kPi * ring.fraction;
}

}  // namespace

double sample_gamma(double shape, Rng& rng) {
    if (shape < 1.0) {
        // Boost: Gamma(a) = Gamma(a+1) * U^(1/a)
        const double g = sample_gamma(shape + 1.0, rng);
        const double u = 1.0 - rng.uniform01();  // (0, 1]
        return g * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = rng.normal01();
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = rng.uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u + 1e-300) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

namespace {

/// Dirichlet, star, and ring priors are defined for 2D regions only.
void require_planar(const PriorSpec& spec) {
    const bool planar_only = std::holds_alternative<DirichletBoxPrior>(spec.family) ||
                             std::holds_alternative<StarPrior>(spec.family) ||
                             std::holds_alternative<RingSectorPrior>(spec.family);
    if (planar_only && spec.region.dim() != 2) {
        throw DimensionMismatch("non-convex and Dirichlet priors are 2D-only, region has " +
                                std::to_string(spec.region.dim()) + " dimensions");
    }
}

}  // namespace

bool support_contains(const PriorSpec& spec, std::span<const double> point) {
    if (point.size() != spec.region.dim()) {
        throw DimensionMismatch("point has " + std::to_string(point.size()) +
                                " coordinates, prior expects " +
                                std::to_string(spec.region.dim()));
    }
    require_planar(spec);
    const AxisBox& region = spec.region;
    return std::visit(
        [&](const auto& fam) -> bool {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, UniformBoxPrior> ||
                          std::is_same_v<T, TruncatedGaussianPrior> ||
                          std::is_same_v<T, BetaBoxPrior>) {
                return region.contains(point);
            } else if constexpr (std::is_same_v<T, DirichletBoxPrior>) {
                if (!region.contains(point)) return false;
                const double u = (point[0] - region.lo[0]) / region.side(0);
                const double v = (point[1] - region.lo[1]) / region.side(1);
                return u + v <= 1.0;
            } else if constexpr (std::is_same_v<T, StarPrior>) {
                const auto verts = star_vertices(fam);
                return point_in_polygon(verts, point[0], point[1]);
            } else {
                return ring_contains(fam, point[0], point[1]);
            }
        },
        spec.family);
}

std::vector<double> sample_prior(const PriorSpec& spec, std::size_t count, Rng& rng) {
    require_planar(spec);
    const std::size_t n = spec.region.dim();
    const AxisBox& region = spec.region;
    std::vector<double> out(count * n);

    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, UniformBoxPrior>) {
                for (std::size_t i = 0; i < count; ++i) {
                    region.sample(rng, {out.data() + i * n, n});
                }
            } else if constexpr (std::is_same_v<T, TruncatedGaussianPrior>) {
                for (std::size_t i = 0; i < count; ++i) {
                    std::span<double> p{out.data() + i * n, n};
                    int tries = 0;
                    do {
                        if (++tries > kRejectionBudget) {
                            throw RejectionBudgetExceeded(
                                "truncated Gaussian missed its region 10000x");
                        }
                        for (std::size_t k = 0; k < n; ++k) {
                            p[k] = fam.mean[k] + fam.std_dev[k] * rng.normal01();
                        }
                    } while (!region.contains(p));
                }
            } else if constexpr (std::is_same_v<T, BetaBoxPrior>) {
                for (std::size_t i = 0; i < count; ++i) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double x = sample_gamma(fam.a, rng);
                        const double y = sample_gamma(fam.b, rng);
                        out[i * n + k] = region.lo[k] + region.side(k) * (x / (x + y));
                    }
                }
            } else if constexpr (std::is_same_v<T, DirichletBoxPrior>) {
                const std::size_t m = fam.alpha.size();
                std::vector<double> g(m);
                for (std::size_t i = 0; i < count; ++i) {
                    double total = 0.0;
                    for (std::size_t k = 0; k < m; ++k) {
                        g[k] = sample_gamma(fam.alpha[k], rng);
                        total += g[k];
                    }
                    out[i * n] = region.lo[0] + region.side(0) * (g[0] / total);
                    out[i * n + 1] = region.lo[1] + region.side(1) * (g[1] / total);
                }
            } else if constexpr (std::is_same_v<T, StarPrior>) {
                const auto verts = star_vertices(fam);
                const double r = fam.outer_radius;
                for (std::size_t i = 0; i < count; ++i) {
                    int tries = 0;
                    for (;;) {
                        if (++tries > kRejectionBudget) {
                            throw RejectionBudgetExceeded("star rejection missed 10000x");
                        }
                        const double x = rng.uniform(fam.center[0] - r, fam.center[0] + r);
                        const double y = rng.uniform(fam.center[1] - r, fam.center[1] + r);
                        if (point_in_polygon(verts, x, y)) {
                            out[i * n] = x;
                            out[i * n + 1] = y;
                            break;
                        }
                    }
                }
            } else {  // RingSectorPrior
                const double r0sq = fam.inner_radius * fam.inner_radius;
                const double r1sq = fam.outer_radius * fam.outer_radius;
                for (std::size_t i = 0; i < count; ++i) {
                    // area-uniform radius via inverse CDF on r^2
                    const double r = std::sqrt(r0sq + rng.uniform01() * (r1sq - r0sq));
                    const double a = rng.uniform01() * 2.0 * kPi * fam.fraction;
                    out[i * n] = fam.center[0] + r * std::cos(a);
                    out[i * n + 1] = fam.center[1] + r * std::sin(a);
                }
            }
        },
        spec.family);
    return out;
}

}  // namespace depf
