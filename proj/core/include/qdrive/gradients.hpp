#pragma once

#include <cstdint>

#include "qdrive/problems.hpp"

namespace qdrive {

/**
 * Parameter-shift gradient of the protocol cost. For every interior node k,
 * the gradient of the fidelity is assembled from two-point +/- pi/2 shift
 * evaluations of each gate whose angle depends on u_k (chain rule with the
 * linear coefficient d(angle)/du_k); controlled phases are differentiated
 * through their Rz ⊗ Rz ⊗ Rzz decomposition, global phases contribute
 * nothing. The scalar cost is then chained through dJ/dF at the unshifted
 * fidelity. Pinned nodes get zero gradient.
 *
 * Shift evaluations reuse one forward and one adjoint sweep of the circuit,
 * so a full gradient costs about two evolutions plus O(gates) contractions.
 * Throws UnsupportedParameterizationError when a tape angle is not linear in
 * its control node.
 */
GradientEstimate grad_shift(const ControlProblem& problem, const std::vector<double>& u);

/// Fidelity with one tape instruction's angle shifted; used by the scan ops
/// and as the slow-path reference for grad_shift.
double fidelity_with_shift(const TrotterTape& tape, const QubitState& psi0,
                           const QubitState& target, std::size_t instr_index,
                           double delta_angle);

/// Index into the tape of the representative trainable gate: the controlled
/// phase on the scale-matched qubit pair (n-4, n-3) in the first potential
/// half-block of the middle Trotter step. (Single-qubit phase angles carry no
/// fidelity gradient here: parity symmetry of the centered-Gaussian problem
/// forces them to zero; the chosen pair's angle coefficient is n-invariant.)
std::size_t representative_gate_index(const TrotterTape& tape);

struct BarrenScanOptions {
    int n = 6;
    int nt = 30;  // experiments use 5 * n
    int samples = 50;
    std::uint64_t seed = 1;
    double t_f = 3.152;
};

/**
 * Mean over `samples` random feasible protocols of the absolute two-point
 * parameter-shift gradient |J(theta+pi/2) - J(theta-pi/2)|/2 of the fidelity
 * cost, taken at the representative middle-node gate. `cost_of_fidelity`
 * defaults to the fidelity itself.
 */
double avg_abs_gradient(const BarrenScanOptions& options,
                        const std::function<double(double)>& cost_of_fidelity = nullptr);

struct ShiftCoefficientStats {
    double mean_abs = 0.0;  // |c̄|
    double rel_std = 0.0;   // relative standard deviation across samples
    int valid_samples = 0;
};

/**
 * Ratio |dJ/du_k / dJ/d(theta)| at the representative gate, sampled over
 * random protocol initializations; the per-gate ratio is the tape's linear
 * coefficient, so its spread measures parameterization consistency.
 */
ShiftCoefficientStats shift_coefficient_scan(const BarrenScanOptions& options);

}  // namespace qdrive
