#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace depf {

/// N weighted particles in n-dimensional space. Positions are stored
/// row-major (particle-major); weights sum to 1 after any normalization.
struct ParticleSet {
    std::size_t count = 0;  // N
    std::size_t dim = 0;    // n
    std::vector<double> positions;  // count*dim, row-major
    std::vector<double> weights;    // count

    ParticleSet() = default;
    ParticleSet(std::size_t n_particles, std::size_t n_dims)
        : count(n_particles),
          dim(n_dims),
          positions(n_particles * n_dims, 0.0),
          weights(n_particles, n_particles > 0 ? 1.0 / static_cast<double>(n_particles) : 0.0) {}

    std::span<double> position(std::size_t i) {
        return {positions.data() + i * dim, dim};
    }
    std::span<const double> position(std::size_t i) const {
        return {positions.data() + i * dim, dim};
    }
};

/// Rescale so the vector sums to 1 (proportions preserved).
/// Throws NonFiniteWeight on NaN/inf or negative entries, AllZeroWeights if
/// every entry is zero.
std::vector<double> normalize_weights(const std::vector<double>& weights);

/// In-place variant of normalize_weights.
void normalize_weights_inplace(std::vector<double>& weights);

/// N_eff = 1 / sum(w_i^2) for a normalized weight vector. Lies in [1, N].
double effective_sample_size(const std::vector<double>& weights);

/// H = -sum(w_i * ln(w_i + eps_log)). The guard sits inside the log only;
/// the result is floored at 0 (degenerate vectors would otherwise come out
/// at -eps_log). Lies in [0, ln N + N*eps_log] for normalized weights.
double shannon_entropy(const std::vector<double>& weights, double eps_log = 1e-12);

/// Weight-weighted average position; the filter's point estimate.
std::vector<double> weighted_mean(const ParticleSet& set);

}  // namespace depf
