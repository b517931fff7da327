#pragma once

#include <functional>
#include <vector>

#include "qdrive/errors.hpp"

namespace qdrive {

/**
 * Feasible set for control node values: box bounds, slew limit between
 * consecutive nodes, and pinned endpoint values.
 */
struct Constraints {
    double lo = 1e-6;    // delta_1
    double hi = 1.0;     // delta_2
    double slew = 1.0;   // max |u_{k+1} - u_k|
    double pin_start = 1.0;
    double pin_end = 0.01;

    void validate() const;
    bool satisfied_by(const std::vector<double>& u, double tol = 1e-12) const;
};

/**
 * Piecewise-constant control u(t) = omega^2(t)/omega_0^2 sampled at the
 * N_t + 1 nodes t_k = k * dt, dt = t_f / N_t. Interval k holds the value of
 * its left node, u_k.
 */
struct ControlProtocol {
    int nt = 50;
    double t_f = 3.152;
    std::vector<double> u;  // nt + 1 node values
    Constraints bounds;

    double dt() const { return t_f / static_cast<double>(nt); }
    double node_time(int k) const { return static_cast<double>(k) * dt(); }

    /// Shape checks only (node count, positive finite t_f); evolution code
    /// accepts off-feasible values so gradients can probe past the box.
    void validate_structure() const;

    /// Structure plus constraint feasibility.
    void validate() const;
};

/// Standard initial guess: linear interpolation from pin_start to pin_end.
ControlProtocol linear_ramp(int nt, double t_f, const Constraints& bounds);

/// Protocol with all nodes at `value` (endpoints pinned to it as well).
ControlProtocol constant_protocol(int nt, double t_f, double value);

/// Exact piecewise-constant control with arbitrary switch times, for the
/// classical oracle. Interval i is [edges[i], edges[i+1]) with value[i].
struct PiecewiseControl {
    std::vector<double> edges;   // size m+1, strictly increasing, edges[0] = 0
    std::vector<double> values;  // size m

    double operator()(double t) const;
    double end_time() const { return edges.back(); }
};

}  // namespace qdrive
