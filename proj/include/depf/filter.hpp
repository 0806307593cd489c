#pragma once

#include <functional>
#include <span>

#include "depf/particle_set.hpp"
#include "depf/rng.hpp"

namespace depf {

/// State transition used in the prediction step.
/// Static moves no particle; GaussianJitter adds i.i.d. zero-mean noise of
/// jitter_std per axis (sensitivity studies only, off by default).
struct TransitionSpec {
    enum class Kind { Static, GaussianJitter };
    Kind kind = Kind::Static;
    double jitter_std = 0.0;
};

/// Observation likelihood P(y | x), closed over the current observation.
/// Must return finite values in (0, 1] for in-domain positions.
using LikelihoodFn = std::function<double(std::span<const double>)>;

struct StepDiagnostics {
    double ess = 0.0;       // at the resampling decision
    double entropy = 0.0;   // of the step's final weights
    bool resampled = false;
    bool degenerate_update = false;  // all-zero weight update, reset to uniform
    double acceptance_rate = 1.0;    // MH acceptance; 1.0 when no moves attempted
};

/// Step 1 (sampling): propagate positions through the transition; weights
/// unchanged. Jitter draws per particle, axis-major.
void predict(ParticleSet& set, const TransitionSpec& trans, Rng& rng);

/// Step 2+3 (weight update + normalization): w <- w * lik(x), renormalized.
/// An all-zero update resets to uniform and returns true instead of failing,
/// so a degenerate baseline run keeps going.
bool update_weights(ParticleSet& set, const LikelihoodFn& lik);

/// Step 4: systematic resampling with a single uniform offset; offspring
/// counts are floor(N*w_i) or ceil(N*w_i). Weights reset to 1/N.
void systematic_resample(ParticleSet& set, Rng& rng);

/// One traditional-particle-filter recursion:
/// predict -> update -> (resample iff ESS < ess_threshold).
StepDiagnostics tpf_step(ParticleSet& set, const TransitionSpec& trans, const LikelihoodFn& lik,
                         double ess_threshold, Rng& rng);

}  // namespace depf
