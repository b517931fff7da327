#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdrive/cost.hpp"
#include "qdrive/protocol.hpp"

namespace qdrive {

struct GradientEstimate {
    enum class Method { FiniteDifference, ParameterShift, Spsa };

    Method method = Method::FiniteDifference;
    std::vector<double> du;
};

/// Optimizer trajectory; one entry per iteration, snapshot included.
struct RunRecord {
    struct Iteration {
        int iteration = 0;
        double cost = 0.0;
        std::optional<double> fidelity;  // exact fidelity when the problem has one
        std::vector<double> u;
    };

    std::vector<Iteration> iterations;
    std::uint64_t seed = 0;
    std::string optimizer;
    double wall_seconds = 0.0;
};

/**
 * Projection onto the feasible set: pins the endpoints, clips to the box,
 * then enforces the slew limit with alternating forward/backward sweeps
 * until a fixed point (at most one pass per node). Idempotent. Throws
 * InfeasibleError when |pin_start - pin_end| exceeds N_t * slew.
 */
std::vector<double> project(std::vector<double> u, const Constraints& c);

using CostFn = std::function<double(const std::vector<double>&)>;

/**
 * Central finite differences of J over the interior nodes; pinned endpoint
 * nodes get zero gradient. Throws DivergenceError on non-finite J.
 */
GradientEstimate grad_fd(const CostFn& j, const std::vector<double>& u, double h = 1e-6);

class Rng;

/// Interior nodes uniform in [lo, hi], endpoints pinned, then projected.
std::vector<double> random_feasible_protocol(const Constraints& c, int nt, Rng& rng);

/// What drives a gd_minimize run: a cost, its gradient, and (optionally) the
/// exact fidelity used for run records and early stopping.
struct Objective {
    CostFn value;
    std::function<GradientEstimate(const std::vector<double>&)> gradient;
    CostFn exact_fidelity;  // may be empty
};

struct GdOptions {
    double lr0 = 0.1;
    double lr_growth = 1.3;
    double lr_min = 1e-14;
    int max_iter = 400;
    double tol = 1e-12;      // |dJ| below this for tol_window iterations stops
    int tol_window = 10;
    double stop_infidelity = 0.0;  // > 0 enables early stop on 1 - F <= this
};

enum class OptStatus { Converged, MaxIterations, Diverged };

struct OptResult {
    std::vector<double> u;
    RunRecord record;
    OptStatus status = OptStatus::Converged;
    double final_cost = 0.0;
};

/**
 * Projected gradient descent: u <- project(u - lr * grad J), learning rate
 * halved on cost increase (backtracking) and grown gently on acceptance.
 * The accepted cost sequence is non-increasing. On a non-finite cost the
 * last feasible iterate is returned with status Diverged.
 */
OptResult gd_minimize(const Objective& objective, std::vector<double> u0, const Constraints& c,
                      const GdOptions& options, std::uint64_t seed = 0);

struct SpsaOptions {
    double a = 3.0;   // tuned on the shot-based expansion objective
    double c = 0.1;
    double big_a = 10.0;
    double alpha = 0.602;
    double gamma = 0.101;
    int max_iter = 1500;
};

/**
 * Two-measurement SPSA with Rademacher perturbations on the interior nodes
 * and projection after every probe and update; gains
 * a_k = a/(k+1+A)^alpha, c_k = c/(k+1)^gamma. Deterministic given the seed.
 */
OptResult spsa_minimize(const CostFn& noisy_value, std::vector<double> u0, const Constraints& c,
                        const SpsaOptions& options, std::uint64_t seed,
                        const CostFn& exact_fidelity = nullptr);

}  // namespace qdrive
