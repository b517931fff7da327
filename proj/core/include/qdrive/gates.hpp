#pragma once

#include <span>
#include <vector>

#include "qdrive/state.hpp"

namespace qdrive {

enum class GateKind {
    Phase,            // diag(1, e^{i*angle}) on one qubit
    ControlledPhase,  // e^{i*angle} on |11> of a qubit pair
    X,
    Cnot,
    Rx,  // e^{-i*angle*X/2}
    Rz,  // e^{-i*angle*Z/2}
    H,
    GlobalPhase,  // e^{i*angle} on every amplitude
};

/**
 * One elementary gate. q1 is only meaningful for the two-qubit kinds
 * (ControlledPhase is symmetric; for Cnot q0 is the control).
 */
struct GateOp {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;
    double angle = 0.0;

    static GateOp phase(int q, double angle) { return {GateKind::Phase, q, -1, angle}; }
    static GateOp controlled_phase(int a, int b, double angle) {
        return {GateKind::ControlledPhase, a, b, angle};
    }
    static GateOp x(int q) { return {GateKind::X, q, -1, 0.0}; }
    static GateOp cnot(int control, int target) { return {GateKind::Cnot, control, target, 0.0}; }
    static GateOp rx(int q, double angle) { return {GateKind::Rx, q, -1, angle}; }
    static GateOp rz(int q, double angle) { return {GateKind::Rz, q, -1, angle}; }
    static GateOp h(int q) { return {GateKind::H, q, -1, 0.0}; }
    static GateOp global_phase(double angle) { return {GateKind::GlobalPhase, 0, -1, angle}; }
};

/// Applies g in place. Throws InvalidGateError on out-of-range or repeated targets.
void apply_gate(QubitState& state, const GateOp& g);

void apply_circuit(QubitState& state, std::span<const GateOp> circuit);

/// Gate-by-gate inverse in reverse order (angles negated; X, CNOT, H as is).
std::vector<GateOp> inverse_circuit(std::span<const GateOp> circuit);

/**
 * Quantum Fourier transform, pinned to the inverse-DFT convention:
 * amplitudes map through the unitary matrix (1/sqrt(2^n)) e^{+2*pi*i*j*k/2^n}.
 * Implemented as the H + controlled-phase ladder with a final qubit-order
 * reversal. iqft is the exact inverse (forward unitary DFT).
 */
void qft(QubitState& state);
void iqft(QubitState& state);

}  // namespace qdrive
