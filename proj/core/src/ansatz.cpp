#include "qdrive/ansatz.hpp"

#include "qdrive/gates.hpp"

namespace qdrive {

AnsatzParams AnsatzParams::zeros(int p, int n) {
    AnsatzParams params;
    params.p = p;
    params.n = n;
    params.theta.assign(static_cast<std::size_t>(3) * p * n, 0.0);
    return params;
}

double& AnsatzParams::at(int layer, int qubit, int slot) {
    return theta[static_cast<std::size_t>(3) * (layer * n + qubit) + slot];
}

double AnsatzParams::at(int layer, int qubit, int slot) const {
    return theta[static_cast<std::size_t>(3) * (layer * n + qubit) + slot];
}

std::vector<GateOp> ansatz_circuit(const AnsatzParams& params) {
    const int n = params.n;
    if (params.theta.size() != static_cast<std::size_t>(3) * params.p * n) {
        throw Error("ansatz_circuit: parameter vector has wrong length");
    }
    std::vector<GateOp> circuit;
    circuit.reserve(n + static_cast<std::size_t>(params.p) * 4 * n);
    for (int q = 0; q < n; ++q) {
        circuit.push_back(GateOp::h(q));
    }
    for (int layer = 0; layer < params.p; ++layer) {
        if (n > 1) {
            for (int q = 0; q < n; ++q) {
                circuit.push_back(GateOp::cnot(q, (q + 1) % n));
            }
        }
        for (int q = 0; q < n; ++q) {
            circuit.push_back(GateOp::rz(q, params.at(layer, q, 2)));
            circuit.push_back(GateOp::rx(q, params.at(layer, q, 1)));
            circuit.push_back(GateOp::rz(q, params.at(layer, q, 0)));
        }
    }
    return circuit;
}

QubitState ansatz_state(const AnsatzParams& params) {
    QubitState state(params.n, 0);
    const auto circuit = ansatz_circuit(params);
    apply_circuit(state, circuit);
    return state;
}

}  // namespace qdrive
