#pragma once

#include <cstdint>

namespace qdrive {

/**
 * Counter-based pseudo-random generator (SplitMix64 core).
 *
 * Every stochastic operation in the library takes an explicit seed and
 * builds one of these, so runs are reproducible bit-for-bit. Substreams
 * for independent work items (grid cells, optimizer restarts, shots) are
 * derived with split()/derive() instead of sharing mutable state.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 bits of entropy.
    double uniform();

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal deviate (Box-Muller; deterministic across platforms).
    double normal();

    /// +1 or -1 with equal probability.
    int rademacher();

    /// Uniform integer in [0, bound) by rejection-free multiply-shift.
    std::uint64_t below(std::uint64_t bound);

    /// Independent child generator for the given substream label.
    Rng split(std::uint64_t stream) const;

    /// Derive a child seed from (seed, stream) without constructing an Rng.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

  private:
    std::uint64_t state_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qdrive
