#pragma once

#include <cstdint>

#include "qdrive/ansatz.hpp"

namespace qdrive {

struct PrepareOptions {
    int restarts = 5;
    int max_iter = 500;
    double lr0 = 0.5;
    double fd_step = 1e-5;
    double init_scale = 0.8;       // initial angles uniform in +/- this
    double target_infidelity = 1e-8;  // early stop
};

struct PrepareResult {
    AnsatzParams params;
    double fidelity = 0.0;
    int iterations = 0;  // of the winning restart
};

/**
 * Variational preparation: minimizes 1 - |<target|ansatz(theta)>|^2 by
 * gradient descent with central finite differences and backtracking,
 * restarted from seeded random angles. Deterministic for a given seed.
 * Never returns a fidelity below the best initialization. Throws
 * DivergenceError if the cost turns non-finite.
 */
PrepareResult prepare(const QubitState& target, int p, const PrepareOptions& options,
                      std::uint64_t seed);

}  // namespace qdrive
