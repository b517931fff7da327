#pragma once

#include <vector>

#include "qdrive/gates.hpp"
#include "qdrive/state.hpp"

namespace qdrive {

/**
 * Parameters of the layered hardware-efficient ansatz: p layers over n
 * qubits, three Euler angles per (layer, qubit), 3pn in total. Slot order
 * per qubit is (theta1, theta2, theta3) for Rz(theta1) Rx(theta2) Rz(theta3).
 */
struct AnsatzParams {
    int p = 1;
    int n = 1;
    std::vector<double> theta;  // size 3 * p * n

    static AnsatzParams zeros(int p, int n);

    double& at(int layer, int qubit, int slot);
    double at(int layer, int qubit, int slot) const;

    std::size_t count() const { return theta.size(); }
};

/**
 * Gate sequence of the ansatz applied to |0...0>: Hadamards (producing
 * |+>^n), then per layer the CNOT ring (control q -> target (q+1) mod n,
 * ascending q; identity for n = 1) followed by Rz(theta1) Rx(theta2)
 * Rz(theta3) on every qubit (rightmost factor first).
 */
std::vector<GateOp> ansatz_circuit(const AnsatzParams& params);

QubitState ansatz_state(const AnsatzParams& params);

}  // namespace qdrive
