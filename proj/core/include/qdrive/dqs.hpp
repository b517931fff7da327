#pragma once

#include <vector>

#include "qdrive/gates.hpp"
#include "qdrive/grid.hpp"
#include "qdrive/protocol.hpp"
#include "qdrive/state.hpp"

namespace qdrive {

/**
 * Parameters of the diagonal operator
 *   A_jj = exp{-i dt [h (j*step + x0)^2 + sigma]}
 * on basis index j.
 */
struct QuadraticPhaseSpec {
    double h = 0.0;      // quadratic coefficient
    double x0 = 0.0;     // offset
    double sigma = 0.0;  // scalar offset
    double dt = 0.0;     // phase prefactor
};

/**
 * Exact circuit for the diagonal quadratic phase: expanding
 * j = sum_q 2^q b_q with b_q^2 = b_q gives one global phase of angle
 * -dt (h x0^2 + sigma), per-qubit phase gates
 *   theta_q = -dt h (2 x0 step 2^q + step^2 4^q),
 * and controlled phases for q < q'
 *   theta_{qq'} = -dt h step^2 2^{q+q'+1}.
 * Emits exactly 1 + n + n(n-1)/2 gates.
 */
std::vector<GateOp> synth_quadratic(const QuadraticPhaseSpec& spec, int n, double step);

/// Convenience overload using the grid's position spacing.
std::vector<GateOp> synth_quadratic(const QuadraticPhaseSpec& spec, const SpatialGrid& grid);

/// e^{-i (dt/2) u x^2 / 2} in the position basis (half of a Trotter step).
void potential_half_step(QubitState& state, double u, double dt, const SpatialGrid& grid);

/**
 * e^{-i dt k^2 / 2} on FFT-ordered momentum components: iqft, X on the most
 * significant qubit (recenters the frequency grid), the diagonal quadratic
 * phase with spacing dk and offset -2^{n-1} dk, X again, qft.
 */
void kinetic_step(QubitState& state, double dt, const SpatialGrid& grid);

/// N_t symmetric Trotter steps V(dt/2) T(dt) V(dt/2), interval k using u_k.
void trotter_evolve(QubitState& state, const ControlProtocol& protocol, const SpatialGrid& grid);

/**
 * Flattened instruction sequence of the full Trotter circuit for a given
 * protocol. Each gate records which control node (if any) its angle depends
 * on and the linear coefficient d(angle)/d(u_node); QFTs and its inverse stay
 * opaque. Gradient code replays or partially replays this tape.
 */
struct TrotterTape {
    enum class Op { Gate, Qft, Iqft };

    struct Instr {
        Op op = Op::Gate;
        GateOp gate{};
        int node = -1;           // control-node index, -1 if independent of u
        double dangle_du = 0.0;  // d(gate.angle)/d(u_node)
    };

    std::vector<Instr> instrs;
    int nt = 0;
    SpatialGrid grid;

    static TrotterTape build(const ControlProtocol& protocol, const SpatialGrid& grid);

    /// Applies the whole tape to `state`.
    void run(QubitState& state) const;

    /// Applies instructions [first, last) to `state`.
    void run_range(QubitState& state, std::size_t first, std::size_t last) const;
};

}  // namespace qdrive
