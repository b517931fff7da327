#pragma once

#include "qdrive/cost.hpp"
#include "qdrive/dqs.hpp"
#include "qdrive/optimize.hpp"

namespace qdrive {

/**
 * The wave-packet expansion control problem in register form: evolve the
 * encoded initial Gaussian through the Trotter circuit under control u and
 * score the final state against the encoded target Gaussian.
 */
struct ControlProblem {
    SpatialGrid grid;
    QubitState psi0;
    QubitState target;
    double t_f = 3.152;
    Constraints bounds;
    CostKind cost = CostKind::fidelity_susceptibility(1e-3);

    ControlProtocol protocol_for(const std::vector<double>& u) const;
    QubitState evolve(const std::vector<double>& u) const;
    double fidelity_of(const std::vector<double>& u) const;
    double cost_of(const std::vector<double>& u) const;

    /// Objective with the parameter-shift gradient (the exact-mode default).
    Objective objective_shift() const;

    /// Objective with finite-difference gradients (fallback / cross-check).
    Objective objective_fd(double h = 1e-6) const;
};

struct ExpansionSetup {
    int n = 6;
    double half_width = 10.0;
    double gamma = 3.1622776601683795;  // sqrt(10): omega_f = 0.1
    double d1 = 1e-6;
    double d2 = 1.0;
    double slew = 1.0;
    double t_f = 3.152;
    CostKind cost = CostKind::fidelity_susceptibility(1e-3);
};

/// Encoded-Gaussian expansion problem with pins u(0) = 1, u(t_f) = 1/gamma^4.
ControlProblem make_expansion_problem(const ExpansionSetup& setup);

}  // namespace qdrive
