#include "depf/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "depf/errors.hpp"

namespace depf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt1_2 = 0.70710678118654752440;

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

StepDiagnostics run_filter_step(ParticleSet& set, Variant variant, const LikelihoodFn& lik,
                                const DepfParams& params, Rng& rng) {
    const TransitionSpec trans;  // Static: the targets in both phases are stationary
    if (variant == Variant::Tpf) {
        const double threshold = params.ess_threshold_frac * static_cast<double>(set.count);
        return tpf_step(set, trans, lik, threshold, rng);
    }
    return depf_step(set, trans, lik, params, rng);
}

/// B defaults to the scenario domain when the caller left it unset.
DepfParams resolve_params(const DepfParams& params, const AxisBox& domain) {
    DepfParams p = params;
    if (p.bounding_box.dim() == 0) {
        p.bounding_box = domain;
    } else if (p.bounding_box.dim() != domain.dim()) {
        throw InvalidConfig("bounding_box",
                            "dimensionality differs from the scenario domain");
    }
    return p;
}

void record_iteration(TrialTrace& trace, const StepDiagnostics& diag, double dist) {
    trace.distance.push_back(dist);
    trace.entropy.push_back(diag.entropy);
    trace.ess.push_back(diag.ess);
    trace.resampled.push_back(diag.resampled);
    trace.acceptance_rate.push_back(diag.acceptance_rate);
}

}  // namespace

LocalizationConfig LocalizationConfig::defaults(std::size_t dim) {
    LocalizationConfig cfg;
    cfg.dim = dim;
    cfg.domain = AxisBox::cube(dim, 0.0, 5.0);
    cfg.prior_box = dim == 1 ? AxisBox::cube(1, 4.9, 5.0) : AxisBox::cube(dim, 4.5, 5.0);
    return cfg;
}

double pnorm_likelihood(std::span<const double> x, std::span<const double> goal, double p,
                        double sigma) {
    double d;
    if (p == 2.0) {
        d = euclidean_distance(x, goal);
    } else {
        double s = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) s += std::pow(std::abs(x[k] - goal[k]), p);
        d = std::pow(s, 1.0 / p);
    }
    return std::exp(-d / sigma);
}

TrialTrace run_localization_trial(const LocalizationConfig& cfg, Variant variant,
                                  const DepfParams& raw_params, std::uint64_t seed,
                                  const IterationObserver& observer) {
    Rng rng(seed);
    const DepfParams params = resolve_params(raw_params, cfg.domain);

    std::vector<double> goal(cfg.dim);
    cfg.domain.sample(rng, goal);

    const PriorSpec prior{cfg.prior_box, UniformBoxPrior{}};
    ParticleSet set(cfg.particle_count, cfg.dim);
    set.positions = sample_prior(prior, cfg.particle_count, rng);

    const LikelihoodFn lik = [&](std::span<const double> x) {
        return pnorm_likelihood(x, goal, cfg.p_norm, cfg.lik_scale);
    };

    TrialTrace trace;
    for (std::size_t it = 0; it < cfg.iterations; ++it) {
        const StepDiagnostics diag = run_filter_step(set, variant, lik, params, rng);
        const std::vector<double> estimate = weighted_mean(set);
        record_iteration(trace, diag, euclidean_distance(estimate, goal));
        if (observer) observer(it, set);
    }
    trace.steps_used = cfg.iterations;
    trace.final_distance = trace.distance.back();
    trace.final_entropy = trace.entropy.back();
    return trace;
}

SteConfig SteConfig::defaults() {
    SteConfig cfg;
    cfg.domain = AxisBox::cube(2, 0.0, 20.0);
    cfg.source_region = AxisBox::cube(2, 10.0, 15.0);
    cfg.agent_start_region = AxisBox::cube(2, 0.0, 5.0);
    cfg.prior = make_phase2_prior(PriorFamilyKind::Gaussian,
                                  scope_region(cfg.domain, cfg.agent_start_region, 0.3));
    return cfg;
}

AxisBox scope_region(const AxisBox& domain, const AxisBox& agent_start_region,
                     double priori_scope) {
    const double side = std::sqrt(priori_scope * domain.volume());
    const std::vector<double> center = agent_start_region.center();
    AxisBox box;
    box.lo.resize(domain.dim());
    box.hi.resize(domain.dim());
    for (std::size_t k = 0; k < domain.dim(); ++k) {
        // shift, not clip: the square keeps its full area inside the domain
        double lo = center[k] - 0.5 * side;
        lo = std::max(domain.lo[k], std::min(lo, domain.hi[k] - side));
        box.lo[k] = lo;
        box.hi[k] = lo + side;
    }
    return box;
}

PriorSpec make_phase2_prior(PriorFamilyKind kind, const AxisBox& region) {
    const double side = region.side(0);
    const std::vector<double> center = region.center();
    switch (kind) {
        case PriorFamilyKind::Uniform:
            return {region, UniformBoxPrior{}};
        case PriorFamilyKind::Beta:
            return {region, BetaBoxPrior{2.0, 2.0}};
        case PriorFamilyKind::Gaussian: {
            TruncatedGaussianPrior g;
            g.mean = center;
            g.std_dev = std::vector<double>(region.dim(), side / 4.0);
            return {region, std::move(g)};
        }
        case PriorFamilyKind::Dirichlet:
            return {region, DirichletBoxPrior{}};
        case PriorFamilyKind::Star: {
            StarPrior s;
            s.center = center;
            s.outer_radius = side / 2.0;
            s.inner_radius = 0.4 * s.outer_radius;
            s.points = 5;
            return {region, std::move(s)};
        }
        case PriorFamilyKind::QuarterRing:
        case PriorFamilyKind::HalfRing:
        case PriorFamilyKind::ThreeQuarterRing: {
            RingSectorPrior r;
            r.center = center;
            r.outer_radius = side / 2.0;
            r.inner_radius = 0.5 * r.outer_radius;
            r.fraction = kind == PriorFamilyKind::QuarterRing   ? 0.25
                         : kind == PriorFamilyKind::HalfRing    ? 0.5
                                                                : 0.75;
            return {region, std::move(r)};
        }
    }
    return {region, UniformBoxPrior{}};  // unreachable
}

double ste_observation(std::span<const double> source, std::span<const double> sensor,
                       const SteConfig& cfg, Rng& rng) {
    const double d = euclidean_distance(sensor, source);
    const double c = cfg.release_rate / (d * d + cfg.background);
    const double eta = cfg.sensor_noise_std > 0.0 ? cfg.sensor_noise_std * rng.normal01() : 0.0;
    return c * std::exp(eta);
}

double ste_likelihood(std::span<const double> theta, double z, std::span<const double> sensor,
                      const SteConfig& cfg) {
    if (z <= 0.0) throw NonPositiveReading("reading " + std::to_string(z));
    const double d = euclidean_distance(sensor, theta);
    const double c = cfg.release_rate / (d * d + cfg.background);
    const double sigma = cfg.sensor_noise_std;
    const double r = (std::log(z) - std::log(c)) / sigma;
    return std::exp(-0.5 * r * r) / (z * sigma * std::sqrt(2.0 * kPi));
}

std::size_t action_count() { return 9; }

void apply_action(std::size_t action, std::span<const double> from, std::span<double> to) {
    // 0..7: unit steps at 0,45,...,315 degrees; 8: stay
    static constexpr double dx[9] = {1.0, kSqrt1_2, 0.0, -kSqrt1_2, -1.0, -kSqrt1_2, 0.0,
                                     kSqrt1_2, 0.0};
    static constexpr double dy[9] = {0.0, kSqrt1_2, 1.0, kSqrt1_2, 0.0, -kSqrt1_2, -1.0,
                                     -kSqrt1_2, 0.0};
    to[0] = from[0] + dx[action];
    to[1] = from[1] + dy[action];
}

double discrete_kl(const std::vector<double>& w_new, const std::vector<double>& w_old) {
    double kl = 0.0;
    for (std::size_t i = 0; i < w_new.size(); ++i) {
        if (w_old[i] > 0.0 && w_new[i] > 0.0) {
            kl += w_new[i] * std::log(w_new[i] / w_old[i]);
        }
    }
    return kl;
}

double expected_kl_utility(const ParticleSet& set, std::size_t action,
                           std::span<const double> agent, const SteConfig& cfg, Rng& rng) {
    double sensor[2];
    apply_action(action, agent, sensor);

    // Per-particle log concentration at the hypothetical sensor position; the
    // z-dependent log-normal prefactor is shared by all particles and cancels
    // in the reweighting.
    const std::size_t n = set.count;
    std::vector<double> log_c(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto theta = set.position(i);
        const double d = euclidean_distance({sensor, 2}, theta);
        log_c[i] = std::log(cfg.release_rate / (d * d + cfg.background));
    }

    const double sigma = cfg.sensor_noise_std;
    std::vector<double> w_new(n);
    double total_kl = 0.0;
    for (std::size_t s = 0; s < cfg.kl_mc_samples; ++s) {
        // simulated reading from the current mixture: pick a particle by
        // weight, observe from it
        const double pick = rng.uniform01();
        std::size_t j = 0;
        double cum = set.weights[0];
        while (cum < pick && j + 1 < n) cum += set.weights[++j];
        const double log_z = log_c[j] + sigma * rng.normal01();

        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = (log_z - log_c[i]) / sigma;
            w_new[i] = set.weights[i] * std::exp(-0.5 * r * r);
            total += w_new[i];
        }
        if (total <= 0.0) continue;  // hypothetical update carries no information
        for (double& w : w_new) w /= total;
        total_kl += std::max(0.0, discrete_kl(w_new, set.weights));
    }
    return total_kl / static_cast<double>(cfg.kl_mc_samples);
}

std::size_t select_action(const ParticleSet& set, std::span<const double> agent,
                          const SteConfig& cfg, Rng& rng) {
    std::size_t best = action_count();  // sentinel
    double best_utility = 0.0;
    double to[2];
    for (std::size_t a = 0; a < action_count(); ++a) {
        apply_action(a, agent, to);
        if (!cfg.domain.contains({to, 2})) continue;
        const double u = expected_kl_utility(set, a, agent, cfg, rng);
        if (best == action_count() || u > best_utility) {
            best = a;
            best_utility = u;
        }
    }
    return best;
}

TrialTrace run_ste_trial(const SteConfig& cfg, Variant variant, const DepfParams& raw_params,
                         std::uint64_t seed, const IterationObserver& observer) {
    Rng rng(seed);
    const DepfParams params = resolve_params(raw_params, cfg.domain);

    std::vector<double> source(2), agent(2);
    cfg.source_region.sample(rng, source);
    cfg.agent_start_region.sample(rng, agent);

    ParticleSet set(cfg.particle_count, 2);
    set.positions = sample_prior(cfg.prior, cfg.particle_count, rng);

    TrialTrace trace;
    for (std::size_t step = 1; step <= cfg.max_steps; ++step) {
        const std::size_t action = select_action(set, agent, cfg, rng);
        std::vector<double> moved(2);
        apply_action(action, agent, moved);
        agent = std::move(moved);

        const double z = ste_observation(source, agent, cfg, rng);
        // the filter consumes the (0,1] Gaussian kernel in log-reading space;
        // it differs from the density by a theta-independent factor, which
        // normalization removes
        const LikelihoodFn lik = [&](std::span<const double> theta) {
            const double d = euclidean_distance(agent, theta);
            const double c = cfg.release_rate / (d * d + cfg.background);
            const double r = (std::log(z) - std::log(c)) / cfg.sensor_noise_std;
            return std::exp(-0.5 * r * r);
        };

        const StepDiagnostics diag = run_filter_step(set, variant, lik, params, rng);
        const std::vector<double> estimate = weighted_mean(set);
        const double dist = euclidean_distance(estimate, source);
        record_iteration(trace, diag, dist);
        if (observer) observer(step - 1, set);

        trace.steps_used = step;
        if (dist <= cfg.success_radius) {
            trace.success = true;
            break;
        }
    }
    if (!trace.success) trace.steps_used = cfg.max_steps;
    trace.final_distance = trace.distance.back();
    trace.final_entropy = trace.entropy.back();
    return trace;
}

}  // namespace depf
