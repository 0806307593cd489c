#include "depf/filter.hpp"

#include <algorithm>
#include <cmath>

namespace depf {

void predict(ParticleSet& set, const TransitionSpec& trans, Rng& rng) {
    if (trans.kind == TransitionSpec::Kind::Static) return;
    for (std::size_t i = 0; i < set.count; ++i) {
        auto x = set.position(i);
        for (std::size_t k = 0; k < set.dim; ++k) {
            x[k] += trans.jitter_std * rng.normal01();
        }
    }
}

bool update_weights(ParticleSet& set, const LikelihoodFn& lik) {
    double total = 0.0;
    for (std::size_t i = 0; i < set.count; ++i) {
        set.weights[i] *= lik(set.position(i));
        total += set.weights[i];
    }
    if (total <= 0.0) {
        const double u = 1.0 / static_cast<double>(set.count);
        for (double& w : set.weights) w = u;
        return true;
    }
    normalize_weights_inplace(set.weights);
    return false;
}

void systematic_resample(ParticleSet& set, Rng& rng) {
    const std::size_t n = set.count;
    const double offset = rng.uniform01() / static_cast<double>(n);

    std::vector<double> new_positions(set.positions.size());
    std::size_t src = 0;
    double cumulative = set.weights[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double point = offset + static_cast<double>(i) / static_cast<double>(n);
        // half-open strata: a point on a bin's right edge belongs to the next
        // bin, which also skips zero-weight bins when the offset is exactly 0
        while (cumulative <= point && src + 1 < n) {
            ++src;
            cumulative += set.weights[src];
        }
        const auto from = set.position(src);
        std::copy(from.begin(), from.end(), new_positions.begin() + i * set.dim);
    }
    set.positions = std::move(new_positions);
    const double u = 1.0 / static_cast<double>(n);
    for (double& w : set.weights) w = u;
}

StepDiagnostics tpf_step(ParticleSet& set, const TransitionSpec& trans, const LikelihoodFn& lik,
                         double ess_threshold, Rng& rng) {
    StepDiagnostics diag;
    predict(set, trans, rng);
    diag.degenerate_update = update_weights(set, lik);
    diag.ess = effective_sample_size(set.weights);
    if (diag.ess < ess_threshold) {
        systematic_resample(set, rng);
        diag.resampled = true;
    }
    diag.entropy = shannon_entropy(set.weights);
    return diag;
}

}  // namespace depf
