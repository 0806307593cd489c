#include "depf/metrics.hpp"

#include <cmath>

#include "depf/errors.hpp"

namespace depf {

namespace {

void mean_and_std(const std::vector<double>& xs, double& mean, double& stddev) {
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    mean = sum / n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    stddev = std::sqrt(var / n);
}

}  // namespace

SummaryStats aggregate_trials(const std::vector<TrialTrace>& traces, AvgStepMode mode) {
    if (traces.empty()) throw EmptyTrialSet();

    std::vector<double> distances, entropies;
    distances.reserve(traces.size());
    entropies.reserve(traces.size());
    std::size_t successes = 0;
    double step_sum = 0.0;
    std::size_t step_count = 0;
    for (const TrialTrace& t : traces) {
        distances.push_back(t.final_distance);
        entropies.push_back(t.final_entropy);
        if (t.success) ++successes;
        if (mode == AvgStepMode::AllTrials || t.success) {
            step_sum += static_cast<double>(t.steps_used);
            ++step_count;
        }
    }

    SummaryStats s;
    s.trials = traces.size();
    mean_and_std(distances, s.final_distance_mean, s.final_distance_std);
    mean_and_std(entropies, s.final_entropy_mean, s.final_entropy_std);
    s.success_rate = static_cast<double>(successes) / static_cast<double>(traces.size());
    s.average_step = step_count > 0 ? step_sum / static_cast<double>(step_count) : 0.0;
    return s;
}

}  // namespace depf
