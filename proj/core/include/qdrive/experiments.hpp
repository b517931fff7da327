#pragma once

#include <filesystem>
#include <functional>

#include "qdrive/config.hpp"
#include "qdrive/emit.hpp"
#include "qdrive/problems.hpp"

namespace qdrive {

struct RunOutcome {
    std::filesystem::path directory;
    std::vector<std::string> files;
    int total_cells = 0;
    int failed_cells = 0;

    bool ok() const { return failed_cells == 0; }
};

/**
 * Runs the configured experiment and writes its CSV data files plus a JSON
 * manifest (config echo, seed, version, wall time, per-cell errors) into
 * out_dir. Grid cells execute on a small work pool with per-cell derived
 * seeds, so the emitted bytes do not depend on thread count or cell order;
 * cell failures are recorded without aborting the grid.
 */
RunOutcome run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                          int threads);

// ---- building blocks shared with the acceptance suite and the CLI ----

/// Expansion problem matching the config's physics block.
ExpansionSetup setup_from_config(const ExperimentConfig& config);

/// Linear ramp with a seeded uniform perturbation of the interior, projected
/// back onto the constraints (seed ignored when jitter == 0).
std::vector<double> jittered_ramp(const Constraints& c, int nt, double jitter,
                                  std::uint64_t seed);

struct TrainOptions {
    int max_iter = 400;
    double lr0 = 0.1;
    double tol = 1e-12;
    double stop_infidelity = 0.0;  // 0 disables early stopping
    bool use_shift = true;         // parameter-shift gradient; false = finite differences
};

/// Projected GD on the protocol cost from the given start.
OptResult train_protocol(const ControlProblem& problem, std::vector<double> u0,
                         const TrainOptions& options);

struct MaxFidelityResult {
    OptResult opt;
    double fidelity = 0.0;
    std::string init_used;  // "ramp" or "bangbang"
};

/**
 * Max-fidelity control for one (t_f, nt) cell: GD from the linear ramp; if
 * that lands below 0.9995 fidelity, retrains from the time-rescaled
 * bang-bang start and keeps the better result.
 */
MaxFidelityResult train_max_fidelity(const ExpansionSetup& setup, int nt,
                                     const TrainOptions& options);

/// First iteration whose exact infidelity is <= threshold; record size if never.
int iterations_to_infidelity(const RunRecord& record, double threshold);

/// Median exact infidelity over the trailing fraction of the run.
double plateau_infidelity(const RunRecord& record, double fraction = 0.25);

/**
 * Inverse of a variationally-learned target-preparation circuit. Appending it
 * to the evolved register turns the target overlap into the all-zeros outcome
 * probability, which finite shots can estimate. (Position-basis counts alone
 * cannot: the quadratic phase -- the Gaussian's width velocity -- is invisible
 * in the density, so a counts-only cost leaves it untrained.)
 */
std::vector<GateOp> target_uncompute_circuit(const QubitState& target, int depth,
                                             std::uint64_t seed);

/**
 * Shot-based infidelity objective: evolve, append the uncompute circuit,
 * sample with readout flips, and score 1 - (all-zeros fraction). Every
 * evaluation draws fresh shots from a counter-derived seed.
 */
CostFn make_noisy_objective(const ControlProblem& problem, std::uint64_t shots, double beta,
                            std::uint64_t seed, std::vector<GateOp> uncompute);

/// Runs fn(0..count-1) on `threads` workers; fn must handle its own errors.
void for_each_index(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace qdrive
