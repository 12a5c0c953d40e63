#pragma once

#include <cstdint>

namespace ntangled {

/// Deterministic, seedable generator (xoshiro256** seeded through SplitMix64).
/// All randomness in the project flows through this type so that a run is
/// fully reproducible from a single seed. Parallel work derives independent
/// streams with derive_stream(seed, task_index).
class Rng {
  public:
    explicit Rng(uint64_t seed);

    uint64_t next_u64();

    /// Uniform double in [0, 1).
    double uniform();
    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform angle in [0, 2*pi).
    double angle();
    /// Standard normal via Box-Muller (two uniforms per call, no cached spare).
    double gaussian();
    /// Uniform integer in [0, bound) without modulo bias.
    uint64_t below(uint64_t bound);

  private:
    uint64_t s_[4];
};

/// Stream-derivation rule used everywhere tasks run in parallel: stream k of
/// seed s is an Rng constructed from (s XOR k) expanded through SplitMix64.
Rng derive_stream(uint64_t seed, uint64_t task_index);

/// Derives a child seed for a named sub-purpose (restarts, eval draws, per
/// depth class, ...) so unrelated streams never collide.
uint64_t mix_seed(uint64_t seed, uint64_t salt);

/// The raw SplitMix64 step, exposed for nested stream derivation.
uint64_t splitmix64(uint64_t& state);

} // namespace ntangled
