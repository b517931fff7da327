#pragma once

#include <string>

#include "qdrive/sampling.hpp"
#include "qdrive/state.hpp"

namespace qdrive {

/// Pure-state fidelity |<a|b>|^2, in [0, 1].
double fidelity(const QubitState& a, const QubitState& b);

/// Bures angle arccos|<a|b>|, in [0, pi/2].
double bures_angle(const QubitState& a, const QubitState& b);

/// Cap applied when the fidelity underflows: chi_f stays finite for optimizers.
double fidelity_susceptibility_cap(double delta_f);

/// chi_f = -2 ln(F) / delta_f, capped near F = 0.
double fidelity_susceptibility(double f, double delta_f);

/// Bhattacharyya overlap squared, (sum_i sqrt(p_hat_i q_i))^2, with
/// p_hat_i = counts_i / shots. Requires target probabilities summing to 1.
double classical_fidelity(const CountsHistogram& counts, const std::vector<double>& target_probs);

/**
 * A scalar cost as a function of the exact fidelity F: the infidelity 1 - F,
 * the Bures angle arccos(sqrt(F)), or the fidelity susceptibility
 * -2 ln(F)/delta_f. All three are strictly decreasing in F, so they share
 * their minimizers; FS amplifies gradients by ~2/(F delta_f).
 */
struct CostKind {
    enum class Tag { Infidelity, BuresAngle, FidelitySusceptibility };

    Tag tag = Tag::Infidelity;
    double delta_f = 1e-3;  // FS coefficient

    static CostKind infidelity() { return {Tag::Infidelity, 0.0}; }
    static CostKind bures_angle() { return {Tag::BuresAngle, 0.0}; }
    static CostKind fidelity_susceptibility(double delta_f) {
        return {Tag::FidelitySusceptibility, delta_f};
    }

    double value(double f) const;

    /// dJ/dF, used to chain parameter-shift fidelity gradients through J.
    double dvalue_df(double f) const;

    std::string label() const;
};

}  // namespace qdrive
