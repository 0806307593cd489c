#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "depf/diffusion.hpp"
#include "depf/errors.hpp"
#include "depf/priors.hpp"
#include "support/jacobi_eigen.hpp"

using namespace depf;

namespace {

DepfParams params_1d() {
    DepfParams p;
    p.bounding_box = AxisBox::cube(1, 0.0, 5.0);
    return p;
}

ParticleSet uniform_set(Rng& rng, std::size_t count, std::size_t dim, const AxisBox& box) {
    ParticleSet set(count, dim);
    for (std::size_t i = 0; i < count; ++i) box.sample(rng, set.position(i));
    return set;
}

}  // namespace

TEST_CASE("optimal_bandwidth anchors and closed form") {
    CHECK(optimal_bandwidth(123, 2).scale_a == 1.0);  // 4/(n+2) = 1 exactly
    CHECK(std::abs(optimal_bandwidth(600, 2).h_opt - 0.344330) <= 1e-6);
    CHECK(std::abs(optimal_bandwidth(400, 1).h_opt - 0.319577) <= 1e-6);

    // independent high-precision evaluation over the full sweep grid
    for (std::size_t n = 1; n <= 7; ++n) {
        for (std::size_t count : {50, 200, 300, 400, 600, 700, 800, 900, 1000}) {
            const long double e = 1.0L / (static_cast<long double>(n) + 4.0L);
            const long double expected =
                std::pow(4.0L / (static_cast<long double>(n) + 2.0L), e) *
                std::pow(static_cast<long double>(count), -e);
            const BandwidthInfo info = optimal_bandwidth(count, n);
            CHECK(std::abs(info.h_opt - static_cast<double>(expected)) <=
                  1e-12 * static_cast<double>(expected));
            CHECK(info.h_opt == info.scale_a * std::pow(static_cast<double>(count),
                                                        -1.0 / (static_cast<double>(n) + 4.0)));
        }
    }
}

TEST_CASE("inject_exploratory: ER=0 is a no-op") {
    Rng rng(20);
    auto set = uniform_set(rng, 50, 1, AxisBox::cube(1, 4.0, 5.0));
    const auto before = set;
    DepfParams p = params_1d();
    p.exploration_ratio = 0.0;
    inject_exploratory(set, p, rng);
    CHECK(set.positions == before.positions);
    CHECK(set.weights == before.weights);
}

TEST_CASE("inject_exploratory: ER=1 replaces everything with uniform mass") {
    Rng rng(21);
    auto set = uniform_set(rng, 40, 1, AxisBox::cube(1, 4.0, 5.0));
    DepfParams p = params_1d();
    p.exploration_ratio = 1.0;
    inject_exploratory(set, p, rng);
    for (std::size_t i = 0; i < set.count; ++i) {
        CHECK(set.positions[i] >= 0.0);
        CHECK(set.positions[i] <= 5.0);
        CHECK(set.weights[i] == doctest::Approx(1.0 / 40.0).epsilon(1e-12));
    }
}

TEST_CASE("inject_exploratory: N=400, ER=0.3 replaces exactly 120 lowest weights") {
    Rng rng(22);
    ParticleSet set(400, 1);
    for (std::size_t i = 0; i < 400; ++i) set.positions[i] = 4.9;
    // strictly increasing weights: victims must be indices 0..119
    std::vector<double> w(400);
    for (std::size_t i = 0; i < 400; ++i) w[i] = static_cast<double>(i + 1);
    set.weights = normalize_weights(w);
    const auto before = set;

    DepfParams p = params_1d();
    p.exploration_ratio = 0.3;
    inject_exploratory(set, p, rng);

    // pre-normalization mass: kept weights unchanged, victims at eps/120 each
    double z = 0.0;
    for (std::size_t i = 120; i < 400; ++i) z += before.weights[i];
    z += p.epsilon_weight;

    std::size_t replaced = 0;
    for (std::size_t i = 0; i < 400; ++i) {
        if (i < 120) {
            ++replaced;
            CHECK(set.weights[i] ==
                  doctest::Approx(p.epsilon_weight / 120.0 / z).epsilon(1e-12));
        } else {
            CHECK(set.positions[i] == 4.9);
            CHECK(set.weights[i] == doctest::Approx(before.weights[i] / z).epsilon(1e-12));
        }
    }
    CHECK(replaced == 120);
}

TEST_CASE("inject_exploratory: ties broken by lowest index") {
    Rng rng(23);
    ParticleSet set(10, 1);
    for (std::size_t i = 0; i < 10; ++i) set.positions[i] = 100.0 + static_cast<double>(i);
    // all weights equal: victims must be indices 0..2
    DepfParams p = params_1d();
    p.exploration_ratio = 0.3;
    inject_exploratory(set, p, rng);
    for (std::size_t i = 0; i < 10; ++i) {
        if (i < 3) {
            CHECK(set.positions[i] <= 5.0);
        } else {
            CHECK(set.positions[i] == 100.0 + static_cast<double>(i));
        }
    }
}

TEST_CASE("entropy_regularize: beta=0 and uniform inputs are fixed points") {
    std::vector<double> w{0.7, 0.2, 0.1};
    auto w0 = w;
    entropy_regularize(w, 0.0);
    CHECK(w == w0);

    std::vector<double> u(8, 0.125);
    entropy_regularize(u, 0.5);
    for (double x : u) CHECK(x == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("entropy_regularize: degenerate input has no entropy to diffuse") {
    std::vector<double> w{1.0, 0.0};
    entropy_regularize(w, 1.0);
    // H([1,0]) ~ 0 so the pull toward uniform is ~0
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(w[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("entropy_regularize matches its closed form and lifts the minimum") {
    Rng rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 30);
        std::vector<double> w(n);
        for (double& x : w) x = rng.uniform01() + 1e-6;
        normalize_weights_inplace(w);
        const auto before = w;
        const double beta = rng.uniform01();
        const double h = shannon_entropy(before);

        entropy_regularize(w, beta);
        const double denom = 1.0 + static_cast<double>(n) * beta * h;
        double min_before = 2.0, min_after = 2.0;
        bool uniform = true;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(w[i] - (before[i] + beta * h) / denom) <= 1e-12);
            min_before = std::min(min_before, before[i]);
            min_after = std::min(min_after, w[i]);
            uniform = uniform && std::abs(before[i] - before[0]) < 1e-15;
        }
        if (!uniform && beta > 0.0) CHECK(min_after > min_before);
    }
}

TEST_CASE("weighted_covariance: zero spread gives lambda*I") {
    ParticleSet set(25, 3);
    for (std::size_t i = 0; i < 25; ++i) {
        set.position(i)[0] = 1.0;
        set.position(i)[1] = -2.0;
        set.position(i)[2] = 0.5;
    }
    const auto sigma = weighted_covariance(set, 1e-6);
    // zero spread up to summation roundoff (weights 1/25 are inexact)
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            CHECK(std::abs(sigma(r, c) - (r == c ? 1e-6 : 0.0)) <= 1e-20);
        }
}

TEST_CASE("weighted_covariance: 1D hand example") {
    ParticleSet set(2, 1);
    set.positions = {0.0, 2.0};
    set.weights = {0.5, 0.5};
    const auto sigma = weighted_covariance(set, 1e-6);
    CHECK(sigma(0, 0) == doctest::Approx(1.0 + 1e-6).epsilon(1e-12));
}

TEST_CASE("weighted_covariance: joint permutation leaves the matrix unchanged") {
    Rng rng(25);
    ParticleSet set(30, 2);
    for (double& x : set.positions) x = rng.uniform(-1.0, 3.0);
    std::vector<double> w(30);
    for (double& x : w) x = rng.uniform01() + 0.01;
    set.weights = normalize_weights(w);
    const auto sigma = weighted_covariance(set, 1e-6);

    ParticleSet reversed(30, 2);
    for (std::size_t i = 0; i < 30; ++i) {
        const std::size_t j = 29 - i;
        std::copy(set.position(j).begin(), set.position(j).end(), reversed.position(i).begin());
        reversed.weights[i] = set.weights[j];
    }
    const auto sigma2 = weighted_covariance(reversed, 1e-6);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(sigma2.data[k] - sigma.data[k]) <= 1e-12);
}

TEST_CASE("weighted_covariance minus lambda*I is positive semidefinite") {
    Rng rng(26);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform01() * 7);
        const std::size_t count = 2 + static_cast<std::size_t>(rng.uniform01() * 60);
        ParticleSet set(count, n);
        for (double& x : set.positions) x = rng.uniform(-10.0, 10.0);
        std::vector<double> w(count);
        for (double& x : w) x = rng.uniform01();
        set.weights = normalize_weights(w);

        auto sigma = weighted_covariance(set, 1e-6);
        for (std::size_t k = 0; k < n; ++k) sigma(k, k) -= 1e-6;
        CHECK(test_support::min_eigenvalue(sigma) >= -1e-10);
    }
}

TEST_CASE("kernel_perturb: h=0 limit leaves positions unchanged") {
    Rng rng(27);
    auto set = uniform_set(rng, 100, 2, AxisBox::cube(2, 0.0, 5.0));
    const auto before = set;
    const auto deltas = kernel_perturb(set, 0.0, SquareMatrix::identity(2), rng);
    CHECK(set.positions == before.positions);
    CHECK(set.weights == before.weights);
    for (double d : deltas) CHECK(d == 0.0);
}

TEST_CASE("kernel_perturb: L=I, h=1 delta covariance is the identity within 3%") {
    ParticleSet set(100000, 2);
    Rng rng(28);
    const auto deltas = kernel_perturb(set, 1.0, SquareMatrix::identity(2), rng);
    double c00 = 0.0, c01 = 0.0, c11 = 0.0;
    for (std::size_t i = 0; i < set.count; ++i) {
        c00 += deltas[2 * i] * deltas[2 * i];
        c01 += deltas[2 * i] * deltas[2 * i + 1];
        c11 += deltas[2 * i + 1] * deltas[2 * i + 1];
    }
    const double n = static_cast<double>(set.count);
    CHECK(std::abs(c00 / n - 1.0) <= 0.03);
    CHECK(std::abs(c11 / n - 1.0) <= 0.03);
    CHECK(std::abs(c01 / n) <= 0.03);
    // deltas are exactly the applied displacement
    for (std::size_t i = 0; i < 200; ++i) CHECK(set.positions[i] == deltas[i]);
}

TEST_CASE("kernel_perturb: L=diag(2,0.5) scales per-axis stds") {
    ParticleSet set(100000, 2);
    Rng rng(29);
    SquareMatrix l(2);
    l(0, 0) = 2.0;
    l(1, 1) = 0.5;
    const auto deltas = kernel_perturb(set, 1.0, l, rng);
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < set.count; ++i) {
        s0 += deltas[2 * i] * deltas[2 * i];
        s1 += deltas[2 * i + 1] * deltas[2 * i + 1];
    }
    const double n = static_cast<double>(set.count);
    CHECK(std::abs(std::sqrt(s0 / n) - 2.0) <= 0.03 * 2.0);
    CHECK(std::abs(std::sqrt(s1 / n) - 0.5) <= 0.03 * 0.5);
}

TEST_CASE("mh_acceptance: identity move accepts, ratio dominates") {
    const auto eye = SquareMatrix::identity(2);
    const std::vector<double> zero{0.0, 0.0};
    CHECK(mh_acceptance(1.0, 1.0, zero, eye) == 1.0);
    CHECK(mh_acceptance(2.0, 1.0, zero, eye) == 2.0);
    CHECK(mh_acceptance(0.0, 1.0, zero, eye) == 0.0);
    // exponential factor shrinks alpha for long moves
    const std::vector<double> big{3.0, 0.0};
    CHECK(mh_acceptance(1.0, 1.0, big, eye) == doctest::Approx(std::exp(-4.5)));
}

TEST_CASE("mh_validate: zero deltas with equal likelihood accept everything") {
    Rng rng(30);
    auto set = uniform_set(rng, 500, 2, AxisBox::cube(2, 0.0, 5.0));
    const auto original = set;
    const std::vector<double> deltas(set.count * 2, 0.0);
    const double rate =
        mh_validate(set, original, deltas, SquareMatrix::identity(2),
                    [](std::span<const double>) { return 0.37; }, rng);
    CHECK(rate == 1.0);
    CHECK(set.positions == original.positions);
}

TEST_CASE("mh_validate: zero likelihood at the new position reverts") {
    Rng rng(31);
    auto original = uniform_set(rng, 200, 1, AxisBox::cube(1, 0.0, 1.0));
    auto set = original;
    std::vector<double> deltas(set.count, 0.5);
    for (std::size_t i = 0; i < set.count; ++i) set.positions[i] += 0.5;

    // anything moved above 1.0 has zero likelihood
    const double rate = mh_validate(
        set, original, deltas, SquareMatrix::identity(1),
        [](std::span<const double> x) { return x[0] <= 1.0 ? 1.0 : 0.0; }, rng);
    CHECK(rate <= 0.5);  // a few originals sit below 0.5 and may move legally
    for (std::size_t i = 0; i < set.count; ++i) {
        if (original.positions[i] + 0.5 > 1.0) {
            CHECK(set.positions[i] == original.positions[i]);
            CHECK(set.weights[i] == original.weights[i]);
        }
    }
}

TEST_CASE("depf_step reduces to tpf_step when every mechanism is disabled") {
    const AxisBox prior_box = AxisBox::cube(1, 4.9, 5.0);
    const LikelihoodFn lik = [](std::span<const double> x) {
        return std::exp(-std::abs(x[0] - 2.0));
    };

    Rng init(32);
    ParticleSet tpf_set(400, 1);
    for (std::size_t i = 0; i < 400; ++i) prior_box.sample(init, tpf_set.position(i));
    ParticleSet depf_set = tpf_set;

    DepfParams p = params_1d();
    p.exploration_ratio = 0.0;
    p.beta = 0.0;
    p.kernel_enabled = false;

    Rng rng_a(33), rng_b(33);
    for (int step = 0; step < 50; ++step) {
        tpf_step(tpf_set, TransitionSpec{}, lik, 200.0, rng_a);
        depf_step(depf_set, TransitionSpec{}, lik, p, rng_b);
        REQUIRE(tpf_set.positions == depf_set.positions);  // bitwise
        REQUIRE(tpf_set.weights == depf_set.weights);
    }
}

TEST_CASE("depf escapes the 1D prior boundary (goal 2.0 outside [4.9,5])") {
    const PriorSpec prior{AxisBox::cube(1, 4.9, 5.0), UniformBoxPrior{}};
    const LikelihoodFn lik = [](std::span<const double> x) {
        return std::exp(-std::abs(x[0] - 2.0));
    };
    DepfParams p = params_1d();
    p.exploration_ratio = 0.3;

    int escapes_by_step2 = 0;
    int close_finishes = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng(400 + seed);
        ParticleSet set(400, 1);
        set.positions = sample_prior(prior, 400, rng);
        bool outside_by_2 = false;
        StepDiagnostics diag;
        for (int step = 0; step < 50; ++step) {
            diag = depf_step(set, TransitionSpec{}, lik, p, rng);
            CHECK(diag.acceptance_rate >= 0.0);
            CHECK(diag.acceptance_rate <= 1.0);
            if (step < 2) {
                for (std::size_t i = 0; i < set.count; ++i) {
                    outside_by_2 = outside_by_2 || !support_contains(prior, set.position(i));
                }
            }
        }
        escapes_by_step2 += outside_by_2 ? 1 : 0;
        const double est = weighted_mean(set)[0];
        close_finishes += std::abs(est - 2.0) <= 0.3 ? 1 : 0;
    }
    CHECK(escapes_by_step2 == 5);
    CHECK(close_finishes >= 4);
}

TEST_CASE("covariance_cholesky: retries cannot rescue a zero ridge; valid ridge works") {
    // identical particles make the covariance exactly lambda*I
    ParticleSet set(50, 2);
    for (std::size_t i = 0; i < 50; ++i) {
        set.position(i)[0] = 1.0;
        set.position(i)[1] = 1.0;
    }
    // lambda = 0 keeps every escalation at zero: abort after 3 retries
    CHECK_THROWS_AS(covariance_cholesky(set, 0.0), NotPositiveDefinite);

    const auto l = covariance_cholesky(set, 1e-6);
    CHECK(l(0, 0) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(l(1, 1) == doctest::Approx(1e-3).epsilon(1e-12));
}
