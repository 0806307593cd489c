#pragma once

#include <cstddef>
#include <vector>

namespace depf {

/// Per-iteration series plus terminal fields for one trial.
struct TrialTrace {
    std::vector<double> distance;   // estimate-to-goal, Euclidean
    std::vector<double> entropy;    // of the weight vector
    std::vector<double> ess;
    std::vector<bool> resampled;
    std::vector<double> acceptance_rate;

    bool success = false;      // phase 2 only; phase 1 leaves it false
    std::size_t steps_used = 0;
    double final_distance = 0.0;
    double final_entropy = 0.0;
};

enum class AvgStepMode {
    AllTrials,    // failures contribute max_steps
    SuccessOnly,  // failures excluded (0 when no trial succeeded)
};

/// Cross-trial aggregates in the result tables' shape.
struct SummaryStats {
    double final_distance_mean = 0.0;
    double final_distance_std = 0.0;  // population
    double final_entropy_mean = 0.0;
    double final_entropy_std = 0.0;   // population
    double success_rate = 0.0;
    double average_step = 0.0;
    std::size_t trials = 0;
};

/// Means are arithmetic, stds are population. Throws EmptyTrialSet.
SummaryStats aggregate_trials(const std::vector<TrialTrace>& traces,
                              AvgStepMode mode = AvgStepMode::AllTrials);

}  // namespace depf
