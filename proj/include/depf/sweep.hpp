#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "depf/metrics.hpp"
#include "depf/scenarios.hpp"

namespace depf {

enum class Phase { One, Two };
enum class OutputFormat { Csv, Json };

/// Full description of one benchmark sweep. Every cell of the Cartesian
/// product (phase 1: dims x particles x ratios; phase 2: priors x scopes x
/// ratios) yields exactly one output row per variant.
struct SweepConfig {
    Phase phase = Phase::One;

    std::vector<std::size_t> dims = {1, 2};       // phase 1
    std::vector<std::size_t> particle_counts = {400};
    std::vector<double> exploration_ratios = {0.3};
    std::vector<PriorFamilyKind> priors = {PriorFamilyKind::Gaussian};  // phase 2
    std::vector<double> scopes = {0.3};                                 // phase 2

    std::size_t trials = 10;
    std::size_t iterations = 50;   // phase 1 iteration budget
    std::size_t max_steps = 150;   // phase 2 step budget
    std::uint64_t base_seed = 0;
    std::vector<Variant> variants = {Variant::Tpf, Variant::Depf};
    AvgStepMode avg_step_mode = AvgStepMode::AllTrials;
    std::size_t jobs = 1;

    DepfParams filter_params;  // ER is overwritten per cell; B per scenario
};

/// One output row: the owning cell's key, the variant, and the aggregates.
/// A per-cell failure is recorded in `error` instead of aborting the sweep.
struct SweepRow {
    std::size_t cell_index = 0;
    // phase-1 key
    std::size_t dim = 0;
    // shared
    std::size_t particles = 0;
    double exploration_ratio = 0.0;
    // phase-2 key
    PriorFamilyKind prior = PriorFamilyKind::Uniform;
    double scope = 0.0;

    Variant variant = Variant::Tpf;
    SummaryStats stats;
    std::string error;
};

const char* variant_name(Variant v);
const char* prior_name(PriorFamilyKind kind);
const char* phase_name(Phase phase);

/// Throws InvalidConfig naming the offending field.
void validate(const SweepConfig& cfg);

/// Run every cell (in parallel across `jobs` workers when jobs > 1) and
/// return rows in deterministic cell order regardless of execution order.
/// Per-trial seeds are derive_seed(base_seed, cell_index, trial_index) and
/// are shared by the variants of a cell, so both filters face the same
/// scenario draw.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

/// CSV with the fixed phase-specific header; metric columns at 6 decimals.
std::string render_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows);

/// {"meta": {...resolved parameters...}, "rows": [...]}.
std::string render_json(const SweepConfig& cfg, const std::vector<SweepRow>& rows);

}  // namespace depf
