#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "depf/box.hpp"
#include "depf/diffusion.hpp"
#include "depf/metrics.hpp"
#include "depf/priors.hpp"
#include "depf/rng.hpp"

namespace depf {

enum class Variant { Tpf, Depf };

/// Optional per-iteration hook; receives the particle set after each filter
/// step. Used by the test suites to check support membership directly.
using IterationObserver = std::function<void(std::size_t iteration, const ParticleSet&)>;

/// Phase 1: p-norm source localization in an n-dimensional box.
struct LocalizationConfig {
    std::size_t dim = 1;
    AxisBox domain;        // default [0,5]^n
    AxisBox prior_box;     // default: 1D [4.9,5.0]; nD corner cube [4.5,5.0]^n
    double p_norm = 2.0;
    double lik_scale = 1.0;  // sigma in exp(-d/sigma)
    std::size_t iterations = 50;
    std::size_t particle_count = 400;

    static LocalizationConfig defaults(std::size_t dim);
};

/// L = exp(-||x - goal||_p / sigma), in (0, 1] and strictly decreasing in the
/// p-norm distance.
double pnorm_likelihood(std::span<const double> x, std::span<const double> goal, double p,
                        double sigma);

/// One seeded localization trial: draw the goal uniform over the domain, draw
/// the prior particles, then run `iterations` filter steps against the fixed
/// goal. The trace records distance / entropy / ESS / resample / acceptance
/// per iteration.
TrialTrace run_localization_trial(const LocalizationConfig& cfg, Variant variant,
                                  const DepfParams& params, std::uint64_t seed,
                                  const IterationObserver& observer = {});

/// Phase 2: source term estimation with information-driven sensing.
struct SteConfig {
    AxisBox domain;              // [0,20]^2
    AxisBox source_region;       // [10,15]^2
    AxisBox agent_start_region;  // [0,5]^2
    double priori_scope = 0.3;   // prior area / domain area
    PriorSpec prior;
    std::size_t max_steps = 150;
    double success_radius = 0.5;
    double sensor_noise_std = 0.05;  // multiplicative-log
    std::size_t kl_mc_samples = 32;
    std::size_t particle_count = 1000;
    // observation model constants: c = release_rate / (dist^2 + background)
    double release_rate = 1.0;
    double background = 0.5;

    static SteConfig defaults();
};

enum class PriorFamilyKind {
    Uniform,
    Beta,
    Gaussian,
    Dirichlet,
    Star,
    QuarterRing,
    HalfRing,
    ThreeQuarterRing,
};

/// The scope box: a square of area priori_scope * |domain|, centered on the
/// agent start region's center, shifted minimally to fit inside the domain.
AxisBox scope_region(const AxisBox& domain, const AxisBox& agent_start_region,
                     double priori_scope);

/// Build the family's PriorSpec over the scope box with the recorded default
/// geometry (Gaussian std = side/4; Beta(2,2); Dirichlet(2,2,2); 5-point star
/// outer = side/2, inner = 0.4*outer; rings outer = side/2, inner = outer/2).
PriorSpec make_phase2_prior(PriorFamilyKind kind, const AxisBox& region);

/// Noisy concentration reading at the sensor:
/// c * exp(eta), eta ~ N(0, noise^2), c = rate / (dist^2 + background).
double ste_observation(std::span<const double> source, std::span<const double> sensor,
                       const SteConfig& cfg, Rng& rng);

/// Log-normal density of the reading z given candidate source theta.
/// Throws NonPositiveReading for z <= 0.
double ste_likelihood(std::span<const double> theta, double z, std::span<const double> sensor,
                      const SteConfig& cfg);

/// Unit-length moves at 0,45,...,315 degrees (indices 0..7) plus stay (8).
std::size_t action_count();
void apply_action(std::size_t action, std::span<const double> from, std::span<double> to);

/// Expected KL divergence between the reweighted and current particle
/// posteriors, Monte Carlo over kl_mc_samples readings simulated from the
/// current particle mixture at the action's sensor position.
double expected_kl_utility(const ParticleSet& set, std::size_t action,
                           std::span<const double> agent, const SteConfig& cfg, Rng& rng);

/// Argmax of expected_kl_utility over feasible actions (those staying inside
/// the domain); ties break toward the lowest action index.
std::size_t select_action(const ParticleSet& set, std::span<const double> agent,
                          const SteConfig& cfg, Rng& rng);

/// One seeded STE trial: move the agent by the information-driven rule, sense,
/// filter, and stop at success (estimate within success_radius of the true
/// source) or max_steps.
TrialTrace run_ste_trial(const SteConfig& cfg, Variant variant, const DepfParams& params,
                         std::uint64_t seed, const IterationObserver& observer = {});

/// Discrete KL divergence sum(w_new * ln(w_new / w_old)) over entries with
/// w_old > 0; non-negative by Gibbs' inequality.
double discrete_kl(const std::vector<double>& w_new, const std::vector<double>& w_old);

}  // namespace depf
