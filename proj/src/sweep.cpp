#include "depf/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include <nlohmann/json.hpp>

#include "depf/errors.hpp"
#include "depf/rng.hpp"

namespace depf {

namespace {

struct Cell {
    std::size_t index = 0;
    std::size_t dim = 0;  // phase 1
    std::size_t particles = 0;
    double exploration_ratio = 0.0;
    PriorFamilyKind prior = PriorFamilyKind::Uniform;  // phase 2
    double scope = 0.0;
};

std::vector<Cell> build_cells(const SweepConfig& cfg) {
    std::vector<Cell> cells;
    if (cfg.phase == Phase::One) {
        for (std::size_t dim : cfg.dims) {
            for (std::size_t n : cfg.particle_counts) {
                for (double er : cfg.exploration_ratios) {
                    Cell c;
                    c.index = cells.size();
                    c.dim = dim;
                    c.particles = n;
                    c.exploration_ratio = er;
                    cells.push_back(c);
                }
            }
        }
    } else {
        for (PriorFamilyKind prior : cfg.priors) {
            for (double scope : cfg.scopes) {
                for (double er : cfg.exploration_ratios) {
                    Cell c;
                    c.index = cells.size();
                    c.prior = prior;
                    c.scope = scope;
                    c.exploration_ratio = er;
                    c.particles = cfg.particle_counts.front();
                    cells.push_back(c);
                }
            }
        }
    }
    return cells;
}

std::vector<SweepRow> run_cell(const SweepConfig& cfg, const Cell& cell) {
    std::vector<SweepRow> rows;
    for (Variant variant : cfg.variants) {
        SweepRow row;
        row.cell_index = cell.index;
        row.dim = cell.dim;
        row.particles = cell.particles;
        row.exploration_ratio = cell.exploration_ratio;
        row.prior = cell.prior;
        row.scope = cell.scope;
        row.variant = variant;
        try {
            DepfParams params = cfg.filter_params;
            params.exploration_ratio = cell.exploration_ratio;
            std::vector<TrialTrace> traces;
            traces.reserve(cfg.trials);
            if (cfg.phase == Phase::One) {
                LocalizationConfig lc = LocalizationConfig::defaults(cell.dim);
                lc.particle_count = cell.particles;
                lc.iterations = cfg.iterations;
                for (std::size_t t = 0; t < cfg.trials; ++t) {
                    const std::uint64_t seed = derive_seed(cfg.base_seed, cell.index, t);
                    traces.push_back(run_localization_trial(lc, variant, params, seed));
                }
            } else {
                SteConfig sc = SteConfig::defaults();
                sc.priori_scope = cell.scope;
                sc.prior = make_phase2_prior(
                    cell.prior, scope_region(sc.domain, sc.agent_start_region, cell.scope));
                sc.particle_count = cell.particles;
                sc.max_steps = cfg.max_steps;
                for (std::size_t t = 0; t < cfg.trials; ++t) {
                    const std::uint64_t seed = derive_seed(cfg.base_seed, cell.index, t);
                    traces.push_back(run_ste_trial(sc, variant, params, seed));
                }
            }
            row.stats = aggregate_trials(traces, cfg.avg_step_mode);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string compact(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double round6(double x) { return std::round(x * 1e6) / 1e6; }

}  // namespace

const char* variant_name(Variant v) { return v == Variant::Tpf ? "tpf" : "depf"; }

const char* prior_name(PriorFamilyKind kind) {
    switch (kind) {
        case PriorFamilyKind::Uniform: return "uniform";
        case PriorFamilyKind::Beta: return "beta";
        case PriorFamilyKind::Gaussian: return "gaussian";
        case PriorFamilyKind::Dirichlet: return "dirichlet";
        case PriorFamilyKind::Star: return "star";
        case PriorFamilyKind::QuarterRing: return "quarter-ring";
        case PriorFamilyKind::HalfRing: return "half-ring";
        case PriorFamilyKind::ThreeQuarterRing: return "three-quarter-ring";
    }
    return "?";
}

const char* phase_name(Phase phase) { return phase == Phase::One ? "phase1" : "phase2"; }

void validate(const SweepConfig& cfg) {
    if (cfg.trials < 1) throw InvalidConfig("trials", "must be at least 1");
    if (cfg.iterations < 1) throw InvalidConfig("iterations", "must be at least 1");
    if (cfg.max_steps < 1) throw InvalidConfig("max_steps", "must be at least 1");
    if (cfg.jobs < 1) throw InvalidConfig("jobs", "must be at least 1");
    if (cfg.variants.empty()) throw InvalidConfig("variant", "must name tpf, depf, or both");
    if (cfg.particle_counts.empty()) throw InvalidConfig("particles", "list is empty");
    for (std::size_t n : cfg.particle_counts) {
        if (n < 1) throw InvalidConfig("particles", "counts must be positive");
    }
    if (cfg.exploration_ratios.empty()) {
        throw InvalidConfig("exploration_ratios", "list is empty");
    }
    for (double er : cfg.exploration_ratios) {
        if (er < 0.0 || er > 1.0) {
            throw InvalidConfig("exploration_ratios", "ratios must lie in [0, 1]");
        }
    }
    if (cfg.phase == Phase::One) {
        if (cfg.dims.empty()) throw InvalidConfig("dims", "list is empty");
        for (std::size_t d : cfg.dims) {
            if (d < 1 || d > 7) throw InvalidConfig("dims", "dimensions must lie in [1, 7]");
        }
    } else {
        if (cfg.priors.empty()) throw InvalidConfig("priors", "list is empty");
        if (cfg.particle_counts.size() > 1) {
            throw InvalidConfig("particles", "phase 2 takes a single particle count");
        }
        if (cfg.scopes.empty()) throw InvalidConfig("scopes", "list is empty");
        for (double s : cfg.scopes) {
            if (s <= 0.0 || s > 1.0) throw InvalidConfig("scopes", "scopes must lie in (0, 1]");
        }
    }
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    validate(cfg);
    const std::vector<Cell> cells = build_cells(cfg);
    std::vector<std::vector<SweepRow>> per_cell(cells.size());

    const std::size_t workers = std::min(cfg.jobs, cells.size());
    if (workers <= 1) {
        for (const Cell& cell : cells) per_cell[cell.index] = run_cell(cfg, cell);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                per_cell[i] = run_cell(cfg, cells[i]);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::vector<SweepRow> rows;  // already in cell order
    for (auto& cell_rows : per_cell) {
        for (auto& r : cell_rows) rows.push_back(std::move(r));
    }
    return rows;
}

std::string render_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
    std::string out;
    if (cfg.phase == Phase::One) {
        out += "scenario,variant,num_particles,exploration_ratio,final_distance_mean,"
               "final_distance_std,final_entropy_mean,final_entropy_std\n";
        for (const SweepRow& r : rows) {
            out += std::to_string(r.dim) + "D," + variant_name(r.variant) + ',' +
                   std::to_string(r.particles) + ',' + compact(r.exploration_ratio) + ',';
            if (r.error.empty()) {
                out += fixed6(r.stats.final_distance_mean) + ',' +
                       fixed6(r.stats.final_distance_std) + ',' +
                       fixed6(r.stats.final_entropy_mean) + ',' +
                       fixed6(r.stats.final_entropy_std);
            } else {
                out += "nan,nan,nan,nan";
            }
            out += '\n';
        }
    } else {
        out += "type_prior,priori_scope,ratio,variant,success_rate,entropy_mean,entropy_var,"
               "distance_mean,distance_var,average_step\n";
        for (const SweepRow& r : rows) {
            out += std::string(prior_name(r.prior)) + ',' + compact(r.scope) + ',' +
                   compact(r.exploration_ratio) + ',' + variant_name(r.variant) + ',';
            if (r.error.empty()) {
                const double evar = r.stats.final_entropy_std * r.stats.final_entropy_std;
                const double dvar = r.stats.final_distance_std * r.stats.final_distance_std;
                out += compact(r.stats.success_rate) + ',' +
                       fixed6(r.stats.final_entropy_mean) + ',' + fixed6(evar) + ',' +
                       fixed6(r.stats.final_distance_mean) + ',' + fixed6(dvar) + ',' +
                       compact(r.stats.average_step);
            } else {
                out += "nan,nan,nan,nan,nan,nan";
            }
            out += '\n';
        }
    }
    return out;
}

std::string render_json(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
    using ordered_json = nlohmann::ordered_json;
    ordered_json doc;

    ordered_json meta;
    meta["phase"] = phase_name(cfg.phase);
    meta["trials"] = cfg.trials;
    meta["base_seed"] = cfg.base_seed;
    meta["seed_derivation"] = "splitmix64 mix of (base_seed, cell_index, trial_index)";
    if (cfg.phase == Phase::One) {
        meta["dims"] = cfg.dims;
        meta["iterations"] = cfg.iterations;
        meta["p_norm"] = 2.0;
        meta["lik_scale"] = 1.0;
        meta["likelihood"] = "exp(-pnorm_distance/lik_scale)";
    } else {
        ordered_json priors = ordered_json::array();
        for (PriorFamilyKind p : cfg.priors) priors.push_back(prior_name(p));
        meta["priors"] = priors;
        meta["scopes"] = cfg.scopes;
        meta["max_steps"] = cfg.max_steps;
        const SteConfig sc = SteConfig::defaults();
        meta["success_radius"] = sc.success_radius;
        meta["sensor_noise_std"] = sc.sensor_noise_std;
        meta["release_rate"] = sc.release_rate;
        meta["background"] = sc.background;
        meta["kl_mc_samples"] = sc.kl_mc_samples;
        meta["observation_model"] = "rate/(dist^2+background) with log-normal noise";
        meta["agent_step_length"] = 1.0;
        meta["avg_step_mode"] =
            cfg.avg_step_mode == AvgStepMode::AllTrials ? "all" : "success-only";
    }
    meta["particles"] = cfg.particle_counts;
    meta["exploration_ratios"] = cfg.exploration_ratios;
    meta["epsilon_weight"] = cfg.filter_params.epsilon_weight;
    meta["beta"] = cfg.filter_params.beta;
    meta["lambda_reg"] = cfg.filter_params.lambda_reg;
    meta["ess_threshold_frac"] = cfg.filter_params.ess_threshold_frac;
    meta["entropy_eps_log"] = 1e-12;
    doc["meta"] = meta;

    ordered_json out_rows = ordered_json::array();
    for (const SweepRow& r : rows) {
        ordered_json row;
        if (cfg.phase == Phase::One) {
            row["scenario"] = std::to_string(r.dim) + "D";
            row["variant"] = variant_name(r.variant);
            row["num_particles"] = r.particles;
            row["exploration_ratio"] = r.exploration_ratio;
            if (r.error.empty()) {
                row["final_distance_mean"] = round6(r.stats.final_distance_mean);
                row["final_distance_std"] = round6(r.stats.final_distance_std);
                row["final_entropy_mean"] = round6(r.stats.final_entropy_mean);
                row["final_entropy_std"] = round6(r.stats.final_entropy_std);
            }
        } else {
            row["type_prior"] = prior_name(r.prior);
            row["priori_scope"] = r.scope;
            row["ratio"] = r.exploration_ratio;
            row["variant"] = variant_name(r.variant);
            if (r.error.empty()) {
                row["success_rate"] = r.stats.success_rate;
                row["entropy_mean"] = round6(r.stats.final_entropy_mean);
                row["entropy_var"] =
                    round6(r.stats.final_entropy_std * r.stats.final_entropy_std);
                row["distance_mean"] = round6(r.stats.final_distance_mean);
                row["distance_var"] =
                    round6(r.stats.final_distance_std * r.stats.final_distance_std);
                row["average_step"] = round6(r.stats.average_step);
            }
        }
        if (!r.error.empty()) row["error"] = r.error;
        out_rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(out_rows);
    return doc.dump(2) + "\n";
}

}  // namespace depf
