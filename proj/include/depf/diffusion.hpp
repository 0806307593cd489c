#pragma once

#include <cstddef>
#include <vector>

#include "depf/box.hpp"
#include "depf/filter.hpp"
#include "depf/linalg.hpp"
#include "depf/particle_set.hpp"
#include "depf/rng.hpp"

namespace depf {

/// Tuning constants for the diffusion-enhanced filter step.
struct DepfParams {
    double exploration_ratio = 0.3;   // ER: fraction of N replaced per step
    double epsilon_weight = 1e-3;     // total initial mass of exploratory particles
    double beta = 1e-3;               // entropy regularization coefficient
    double lambda_reg = 1e-6;         // covariance ridge
    double ess_threshold_frac = 0.5;  // resample when ESS < frac * N
    AxisBox bounding_box;             // extended box B the exploratory particles sample
    bool kernel_enabled = true;       // false disables perturbation + MH + re-update
};

/// h_opt = A * N^(-1/(n+4)) with A = (4/(n+2))^(1/(n+4)).
struct BandwidthInfo {
    double h_opt = 0.0;
    double scale_a = 0.0;
    std::size_t n = 0;
    std::size_t particle_count = 0;
};

BandwidthInfo optimal_bandwidth(std::size_t particle_count, std::size_t n);

/// Replace the floor(ER*N) lowest-weight particles (ties by lowest index)
/// with uniform samples from the bounding box, give each weight eps/|E|, and
/// renormalize the full vector. N is unchanged; ER = 0 is a no-op.
void inject_exploratory(ParticleSet& set, const DepfParams& params, Rng& rng);

/// w <- (w + beta*H) / (1 + N*beta*H), H the Shannon entropy of the input.
/// A convex pull toward uniform; beta = 0 and uniform inputs are fixed points.
void entropy_regularize(std::vector<double>& weights, double beta);

/// Sigma = sum_i w_i (x_i - mu)(x_i - mu)^T + lambda*I with mu the weighted
/// mean. Symmetric positive definite for lambda > 0.
SquareMatrix weighted_covariance(const ParticleSet& set, double lambda_reg);

/// weighted_covariance followed by cholesky_lower, escalating lambda x10 on
/// a failed factorization (at most 3 retries, then the error propagates and
/// aborts the trial).
SquareMatrix covariance_cholesky(const ParticleSet& set, double lambda_reg);

/// Perturb every position by delta = h * L * z, z ~ N(0, I). Weights are
/// untouched; the deltas (N x n, row-major) come back for MH validation.
/// Draws per particle, axis-major.
std::vector<double> kernel_perturb(ParticleSet& set, double h, const SquareMatrix& chol_l,
                                   Rng& rng);

/// alpha = (lik_new / lik_old) * exp(-0.5 * delta^T Sigma^-1 delta), the
/// Mahalanobis term via a triangular solve against the Cholesky factor.
double mh_acceptance(double lik_new, double lik_old, std::span<const double> delta,
                     const SquareMatrix& chol_l);

/// Per particle: keep the perturbed position iff alpha >= u, u ~ U(0,1);
/// otherwise revert position and weight to the originals. Consumes one
/// uniform per particle. Returns the acceptance rate.
double mh_validate(ParticleSet& set, const ParticleSet& original,
                   const std::vector<double>& deltas, const SquareMatrix& chol_l,
                   const LikelihoodFn& lik, Rng& rng);

/// One diffusion-enhanced recursion:
/// predict -> inject_exploratory -> update -> entropy_regularize ->
/// (resample iff ESS < threshold) -> covariance -> Cholesky ->
/// kernel_perturb -> mh_validate -> update -> normalize.
/// With ER = 0, beta = 0, and the kernel disabled this is bit-identical
/// to tpf_step under a shared seed.
StepDiagnostics depf_step(ParticleSet& set, const TransitionSpec& trans, const LikelihoodFn& lik,
                          const DepfParams& params, Rng& rng);

}  // namespace depf
