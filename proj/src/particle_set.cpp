#include "depf/particle_set.hpp"

#include <cmath>
#include <string>

#include "depf/errors.hpp"

namespace depf {

void normalize_weights_inplace(std::vector<double>& weights) {
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = weights[i];
        if (!std::isfinite(w) || w < 0.0) {
            throw NonFiniteWeight("weight " + std::to_string(i) + " is " + std::to_string(w));
        }
        total += w;
    }
    if (total <= 0.0) throw AllZeroWeights();
    // divide rather than multiply by 1/total: a denormal total would overflow
    // the reciprocal, and w/total stays in [0, 1]
    for (double& w : weights) w /= total;
}

std::vector<double> normalize_weights(const std::vector<double>& weights) {
    std::vector<double> out = weights;
    normalize_weights_inplace(out);
    return out;
}

double effective_sample_size(const std::vector<double>& weights) {
    double sumsq = 0.0;
    for (double w : weights) sumsq += w * w;
    return 1.0 / sumsq;
}

double shannon_entropy(const std::vector<double>& weights, double eps_log) {
    double h = 0.0;
    for (double w : weights) h -= w * std::log(w + eps_log);
    // a degenerate vector would leak -w*log(1 + eps) ~ -eps through the guard
    return std::max(0.0, h);
}

std::vector<double> weighted_mean(const ParticleSet& set) {
    std::vector<double> mu(set.dim, 0.0);
    for (std::size_t i = 0; i < set.count; ++i) {
        const double w = set.weights[i];
        const auto x = set.position(i);
        for (std::size_t k = 0; k < set.dim; ++k) mu[k] += w * x[k];
    }
    return mu;
}

}  // namespace depf
