#pragma once

#include <functional>
#include <vector>

#include "qdrive/grid.hpp"
#include "qdrive/protocol.hpp"
#include "qdrive/state.hpp"

namespace qdrive {

/**
 * Classical wave packet on a spatial grid, amplitudes in units of
 * 1/sqrt(oscillator length). Normalization is dx-weighted:
 * sum_j |amps_j|^2 dx = 1.
 */
struct GridWavefunction {
    SpatialGrid grid;
    std::vector<cplx> amps;

    double norm_sq() const;
    void normalize();

    /// <x^2> under |amps|^2 dx.
    double second_moment() const;
};

/// dx-weighted inner product <a|b>.
cplx grid_overlap(const GridWavefunction& a, const GridWavefunction& b);

/// |<a|b>|^2 with the dx weight.
double grid_fidelity(const GridWavefunction& a, const GridWavefunction& b);

/**
 * Scaled Gaussian solution of the driven oscillator: width factor b > 0 and
 * its rate bdot give
 *   psi(x) = (omega0 / (pi b^2))^{1/4} exp[(i/2)(bdot/b) x^2 - omega0 x^2/(2 b^2)],
 * renormalized on the grid. The global dynamical phase is dropped.
 */
GridWavefunction gaussian_state(double b, double bdot, const SpatialGrid& grid,
                                double omega0 = 1.0);

/// Point on an Ermakov trajectory.
struct ErmakovState {
    double t = 0.0;
    double b = 1.0;
    double bdot = 0.0;
};

/**
 * RK4 integration of b'' + u(t) b = 1/b^3 from (b, bdot) = (1, 0), sampled at
 * `steps` uniform substeps. Throws ErmakovSingularityError if b <= 0 occurs.
 */
std::vector<ErmakovState> ermakov_integrate(const std::function<double(double)>& u, double t_f,
                                            int steps);

/// Same, but splits the integration exactly at the switch times of a
/// piecewise-constant control so every RK4 step sees a smooth right-hand side.
std::vector<ErmakovState> ermakov_integrate(const PiecewiseControl& u, int steps);

/// Node-sampled protocol version (left-node values, split at node times).
std::vector<ErmakovState> ermakov_integrate(const ControlProtocol& protocol, int steps);

/// Durations of the two interior bang-bang arcs; total optimal time t1 + t2.
struct BangBangTimes {
    double t1 = 0.0;
    double t2 = 0.0;

    double t_f_opt() const { return t1 + t2; }
};

/**
 * Closed-form minimum-time switching times for expansion by factor gamma with
 * controller bounds d1 <= u <= d2:
 *   t1 = asinh(sqrt(|d1 (g^2-1)(g^2 d2 - 1) / ((d1-d2) g^2 (1-d1))|)) / sqrt(d1)
 *   t2 = asin (sqrt(|d2 (g^2-1)(1 - g^2 d1) / ((d1-d2)(1 - g^4 d2))|)) / sqrt(d2)
 * Requires 0 < d1 < 1/gamma^4 <= d2; throws InfeasibleBoundsError when the
 * asin argument leaves [0, 1].
 */
BangBangTimes bangbang_times(double gamma, double d1, double d2);

/// Exact three-jump control: u = d1 on (0, t1], u = d2 on (t1, t1 + t2).
PiecewiseControl bangbang_control(double gamma, double d1, double d2);

/**
 * Bang-bang control sampled on nt + 1 nodes over [0, t1 + t2]; the switch is
 * assigned by nearest-node rounding, endpoints pinned to 1 and 1/gamma^4.
 */
ControlProtocol bangbang_protocol(double gamma, double d1, double d2, int nt);

/// Split-operator (FFT) evolution through every protocol interval.
GridWavefunction som_evolve(GridWavefunction psi, const ControlProtocol& protocol);

/// Same, returning the state at every node (nt + 1 entries).
std::vector<GridWavefunction> som_evolve_trajectory(GridWavefunction psi,
                                                    const ControlProtocol& protocol);

struct EnergyMoments {
    double mean = 0.0;
    double dispersion = 0.0;
};

/// <H> and sqrt(<H^2> - <H>^2) for H = p^2/2 + u x^2/2, kinetic part by FFT.
EnergyMoments energy_moments(const GridWavefunction& psi, double u);

struct QslReport {
    double de_avg = 0.0;        // time-averaged energy dispersion
    double bures_final = 0.0;   // arccos |<psi_0|psi_{t_f}>|
    double tau_arccos = 0.0;    // bures_final / de_avg
    double tau_sqrt = 0.0;      // sqrt(2 gamma / (1 + gamma^2)) / de_avg
};

/**
 * Quantum-speed-limit quantities along a node-sampled trajectory. The time
 * average of the dispersion is trapezoidal over the nodes; both the
 * arccos-of-overlap bound and the sqrt(2g/(1+g^2)) variant are reported.
 * Throws UndefinedBoundError when the averaged dispersion vanishes.
 */
QslReport qsl_time(const std::vector<GridWavefunction>& trajectory,
                   const std::vector<double>& u_nodes, double t_f, double gamma);

}  // namespace qdrive
