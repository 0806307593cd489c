#include "depf/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "depf/errors.hpp"

namespace depf {

BandwidthInfo optimal_bandwidth(std::size_t particle_count, std::size_t n) {
    BandwidthInfo info;
    info.n = n;
    info.particle_count = particle_count;
    const double exponent = 1.0 / (static_cast<double>(n) + 4.0);
    info.scale_a = std::pow(4.0 / (static_cast<double>(n) + 2.0), exponent);
    info.h_opt = info.scale_a * std::pow(static_cast<double>(particle_count), -exponent);
    return info;
}

void inject_exploratory(ParticleSet& set, const DepfParams& params, Rng& rng) {
    const std::size_t n_explore =
        static_cast<std::size_t>(params.exploration_ratio * static_cast<double>(set.count));
    if (n_explore == 0) return;

    // victims: lowest weights first, ties by lowest index
    std::vector<std::size_t> order(set.count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (set.weights[a] != set.weights[b]) return set.weights[a] < set.weights[b];
        return a < b;
    });

    const double w_explore = params.epsilon_weight / static_cast<double>(n_explore);
    for (std::size_t j = 0; j < n_explore; ++j) {
        const std::size_t i = order[j];
        params.bounding_box.sample(rng, set.position(i));
        set.weights[i] = w_explore;
    }
    normalize_weights_inplace(set.weights);
}

void entropy_regularize(std::vector<double>& weights, double beta) {
    if (beta <= 0.0) return;
    const double h = shannon_entropy(weights);
    const double add = beta * h;
    for (double& w : weights) w += add;
    normalize_weights_inplace(weights);
}

SquareMatrix weighted_covariance(const ParticleSet& set, double lambda_reg) {
    const std::size_t n = set.dim;
    const std::vector<double> mu = weighted_mean(set);
    SquareMatrix sigma(n);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < set.count; ++i) {
        const double w = set.weights[i];
        const auto x = set.position(i);
        for (std::size_t k = 0; k < n; ++k) d[k] = x[k] - mu[k];
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c <= r; ++c) {
                sigma(r, c) += w * d[r] * d[c];
            }
        }
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < r; ++c) sigma(c, r) = sigma(r, c);
        sigma(r, r) += lambda_reg;
    }
    return sigma;
}

SquareMatrix covariance_cholesky(const ParticleSet& set, double lambda_reg) {
    double lambda = lambda_reg;
    for (int attempt = 0;; ++attempt) {
        try {
            return cholesky_lower(weighted_covariance(set, lambda));
        } catch (const NotPositiveDefinite&) {
            if (attempt >= 3) throw;
            lambda *= 10.0;
        }
    }
}

std::vector<double> kernel_perturb(ParticleSet& set, double h, const SquareMatrix& chol_l,
                                   Rng& rng) {
    const std::size_t n = set.dim;
    std::vector<double> deltas(set.count * n);
    std::vector<double> z(n), lz(n);
    for (std::size_t i = 0; i < set.count; ++i) {
        for (std::size_t k = 0; k < n; ++k) z[k] = rng.normal01();
        matvec(chol_l, z, lz);
        auto x = set.position(i);
        for (std::size_t k = 0; k < n; ++k) {
            const double dk = h * lz[k];
            deltas[i * n + k] = dk;
            x[k] += dk;
        }
    }
    return deltas;
}

double mh_acceptance(double lik_new, double lik_old, std::span<const double> delta,
                     const SquareMatrix& chol_l) {
    const double ratio = lik_old > 0.0 ? lik_new / lik_old
                                       : (lik_new > 0.0 ? std::numeric_limits<double>::infinity()
                                                        : 0.0);
    return ratio * std::exp(-0.5 * mahalanobis_sq(chol_l, delta));
}

double mh_validate(ParticleSet& set, const ParticleSet& original,
                   const std::vector<double>& deltas, const SquareMatrix& chol_l,
                   const LikelihoodFn& lik, Rng& rng) {
    const std::size_t n = set.dim;
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < set.count; ++i) {
        const double lik_new = lik(set.position(i));
        const double lik_old = lik(original.position(i));
        const double alpha =
            mh_acceptance(lik_new, lik_old, {deltas.data() + i * n, n}, chol_l);
        const double u = rng.uniform01();
        if (alpha >= u) {
            ++accepted;
        } else {
            const auto from = original.position(i);
            std::copy(from.begin(), from.end(), set.position(i).begin());
            set.weights[i] = original.weights[i];
        }
    }
    return static_cast<double>(accepted) / static_cast<double>(set.count);
}

StepDiagnostics depf_step(ParticleSet& set, const TransitionSpec& trans, const LikelihoodFn& lik,
                          const DepfParams& params, Rng& rng) {
    StepDiagnostics diag;
    predict(set, trans, rng);
    inject_exploratory(set, params, rng);
    diag.degenerate_update = update_weights(set, lik);
    entropy_regularize(set.weights, params.beta);

    diag.ess = effective_sample_size(set.weights);
    if (diag.ess < params.ess_threshold_frac * static_cast<double>(set.count)) {
        systematic_resample(set, rng);
        diag.resampled = true;
    }

    if (params.kernel_enabled) {
        const SquareMatrix chol_l = covariance_cholesky(set, params.lambda_reg);
        const double h = optimal_bandwidth(set.count, set.dim).h_opt;
        const ParticleSet original = set;
        const std::vector<double> deltas = kernel_perturb(set, h, chol_l, rng);
        diag.acceptance_rate = mh_validate(set, original, deltas, chol_l, lik, rng);
        diag.degenerate_update = update_weights(set, lik) || diag.degenerate_update;
    }

    diag.entropy = shannon_entropy(set.weights);
    return diag;
}

}  // namespace depf
