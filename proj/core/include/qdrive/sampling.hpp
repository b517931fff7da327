#pragma once

#include <cstdint>
#include <map>

#include "qdrive/state.hpp"

namespace qdrive {

/// Measurement record: basis index -> occurrence count, sum = shots.
struct CountsHistogram {
    std::uint64_t shots = 0;
    std::map<std::uint64_t, std::uint64_t> counts;

    std::uint64_t total() const;
};

/**
 * Draws `shots` computational-basis outcomes from |amps|^2, then sends each
 * outcome through the readout bit-flip channel: every bit flips independently
 * with probability beta (Kraus pair {sqrt(1-beta) I, sqrt(beta) X} per qubit,
 * applied classically after measurement). Deterministic for a given seed.
 */
CountsHistogram sample(const QubitState& state, std::uint64_t shots, double flip_probability,
                       std::uint64_t seed);

}  // namespace qdrive
