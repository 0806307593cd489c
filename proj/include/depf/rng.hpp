#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace depf {

/// splitmix64 finalizer. Stateless bit mixer used for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

/// Derive the seed of one trial from (base seed, sweep cell index, trial index).
///
/// Definition (stable contract, see README):
///   h0 = mix64(base + G)
///   h1 = mix64(h0 ^ (cell + G))
///   h2 = mix64(h1 ^ (trial + G))      with G = 0x9E3779B97F4A7C15
/// Any single cell/trial is reproducible in isolation from these three integers.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed,
                                    std::uint64_t cell_index,
                                    std::uint64_t trial_index) {
    constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
    std::uint64_t h = mix64(base_seed + kGolden);
    h = mix64(h ^ (cell_index + kGolden));
    h = mix64(h ^ (trial_index + kGolden));
    return h;
}

/// Seeded random stream. One instance per trial; never shared across threads.
///
/// The engine is std::mt19937_64 (bit-exact sequence pinned by the standard).
/// The uniform and normal conversions are spelled out here rather than taken
/// from std:: distributions so the full stream is reproducible across
/// standard libraries and portable to other languages:
///   uniform01: (x >> 11) * 2^-53, in [0, 1)
///   normal:    Box-Muller on (u1, u2] pairs, cosine value first, sine cached
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Standard normal deviate.
    double normal01() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] keeps the log argument positive.
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace depf
