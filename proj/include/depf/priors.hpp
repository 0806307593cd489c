#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "depf/box.hpp"
#include "depf/rng.hpp"

namespace depf {

/// Uniform over the region box.
struct UniformBoxPrior {};

/// Gaussian with diagonal covariance, truncated to the region box by
/// resample-on-miss. Support is the truncation box.
struct TruncatedGaussianPrior {
    std::vector<double> mean;
    std::vector<double> std_dev;  // per axis
};

/// Independent Beta(a, b) per axis, affinely mapped onto the region box.
struct BetaBoxPrior {
    double a = 2.0;
    double b = 2.0;
};

/// Dirichlet(alpha) on the simplex; the first two coordinates are mapped
/// affinely onto the region box. 2D only; support is the lower-left triangle
/// u + v <= 1 in box-relative coordinates.
struct DirichletBoxPrior {
    std::vector<double> alpha = {2.0, 2.0, 2.0};
};

/// Star polygon with `points` spikes: 2*points vertices alternating between
/// outer_radius and inner_radius. Membership is point-in-polygon; sampling is
/// rejection from the polygon's bounding box. 2D only.
struct StarPrior {
    std::vector<double> center;
    double outer_radius = 1.0;
    double inner_radius = 0.4;
    int points = 5;
};

/// Annulus sector: radii in [inner_radius, outer_radius], angle in
/// [0, 2*pi*fraction) measured CCW from +x around the center. 2D only.
struct RingSectorPrior {
    std::vector<double> center;
    double inner_radius = 0.5;
    double outer_radius = 1.0;
    double fraction = 1.0;  // covered fraction of the full circle, in (0, 1]
};

using PriorFamily = std::variant<UniformBoxPrior, TruncatedGaussianPrior, BetaBoxPrior,
                                 DirichletBoxPrior, StarPrior, RingSectorPrior>;

/// One of the eight prior families plus its bounding region.
struct PriorSpec {
    AxisBox region;
    PriorFamily family;
};

/// Exact geometric membership of `point` in the prior's support.
/// Throws DimensionMismatch when point size differs from the spec's.
bool support_contains(const PriorSpec& spec, std::span<const double> point);

/// Draw `count` points from the prior; every point satisfies support_contains.
/// Rejection-sampled families throw RejectionBudgetExceeded after 10000
/// consecutive misses (degenerate geometry).
std::vector<double> sample_prior(const PriorSpec& spec, std::size_t count, Rng& rng);

/// Gamma(shape) deviate via Marsaglia-Tsang; building block for Beta/Dirichlet.
double sample_gamma(double shape, Rng& rng);

}  // namespace depf
