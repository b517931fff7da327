#include "qdrive/gates.hpp"

#include <cmath>

namespace qdrive {

namespace {

void check_target(const QubitState& state, int q) {
    if (q < 0 || q >= state.num_qubits()) {
        throw InvalidGateError("gate target " + std::to_string(q) + " out of range for n=" +
                               std::to_string(state.num_qubits()));
    }
}

void check_pair(const QubitState& state, int a, int b) {
    check_target(state, a);
    check_target(state, b);
    if (a == b) {
        throw InvalidGateError("two-qubit gate targets must be distinct");
    }
}

/// Applies the 2x2 matrix [[m00, m01], [m10, m11]] to qubit q.
void apply_single(QubitState& state, int q, cplx m00, cplx m01, cplx m10, cplx m11) {
    auto& a = state.amps();
    const std::uint64_t bit = std::uint64_t{1} << q;
    const std::uint64_t dim = state.dim();
    for (std::uint64_t block = 0; block < dim; block += 2 * bit) {
        for (std::uint64_t i = block; i < block + bit; ++i) {
            const cplx a0 = a[i];
            const cplx a1 = a[i | bit];
            a[i] = m00 * a0 + m01 * a1;
            a[i | bit] = m10 * a0 + m11 * a1;
        }
    }
}

void reverse_qubit_order(QubitState& state) {
    auto& a = state.amps();
    const int n = state.num_qubits();
    const std::uint64_t dim = state.dim();
    for (std::uint64_t i = 0; i < dim; ++i) {
        std::uint64_t rev = 0;
        for (int q = 0; q < n; ++q) {
            rev |= ((i >> q) & 1ULL) << (n - 1 - q);
        }
        if (rev > i) {
            std::swap(a[i], a[rev]);
        }
    }
}

}  // namespace

void apply_gate(QubitState& state, const GateOp& g) {
    auto& a = state.amps();
    const std::uint64_t dim = state.dim();
    switch (g.kind) {
        case GateKind::Phase: {
            check_target(state, g.q0);
            const std::uint64_t bit = std::uint64_t{1} << g.q0;
            const cplx w = std::polar(1.0, g.angle);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & bit) {
                    a[i] *= w;
                }
            }
            break;
        }
        case GateKind::ControlledPhase: {
            check_pair(state, g.q0, g.q1);
            const std::uint64_t mask =
                (std::uint64_t{1} << g.q0) | (std::uint64_t{1} << g.q1);
            const cplx w = std::polar(1.0, g.angle);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & mask) == mask) {
                    a[i] *= w;
                }
            }
            break;
        }
        case GateKind::X: {
            check_target(state, g.q0);
            const std::uint64_t bit = std::uint64_t{1} << g.q0;
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (!(i & bit)) {
                    std::swap(a[i], a[i | bit]);
                }
            }
            break;
        }
        case GateKind::Cnot: {
            check_pair(state, g.q0, g.q1);
            const std::uint64_t cbit = std::uint64_t{1} << g.q0;
            const std::uint64_t tbit = std::uint64_t{1} << g.q1;
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & cbit) && !(i & tbit)) {
                    std::swap(a[i], a[i | tbit]);
                }
            }
            break;
        }
        case GateKind::Rx: {
            check_target(state, g.q0);
            const double c = std::cos(g.angle / 2.0);
            const double s = std::sin(g.angle / 2.0);
            apply_single(state, g.q0, {c, 0.0}, {0.0, -s}, {0.0, -s}, {c, 0.0});
            break;
        }
        case GateKind::Rz: {
            check_target(state, g.q0);
            apply_single(state, g.q0, std::polar(1.0, -g.angle / 2.0), {0.0, 0.0}, {0.0, 0.0},
                         std::polar(1.0, g.angle / 2.0));
            break;
        }
        case GateKind::H: {
            check_target(state, g.q0);
            const double r = 1.0 / std::sqrt(2.0);
            apply_single(state, g.q0, {r, 0.0}, {r, 0.0}, {r, 0.0}, {-r, 0.0});
            break;
        }
        case GateKind::GlobalPhase: {
            const cplx w = std::polar(1.0, g.angle);
            for (auto& amp : a) {
                amp *= w;
            }
            break;
        }
    }
}

void apply_circuit(QubitState& state, std::span<const GateOp> circuit) {
    for (const auto& g : circuit) {
        apply_gate(state, g);
    }
}

std::vector<GateOp> inverse_circuit(std::span<const GateOp> circuit) {
    std::vector<GateOp> inverse(circuit.rbegin(), circuit.rend());
    for (auto& g : inverse) {
        switch (g.kind) {
            case GateKind::Phase:
            case GateKind::ControlledPhase:
            case GateKind::Rx:
            case GateKind::Rz:
            case GateKind::GlobalPhase:
                g.angle = -g.angle;
                break;
            case GateKind::X:
            case GateKind::Cnot:
            case GateKind::H:
                break;
        }
    }
    return inverse;
}

void qft(QubitState& state) {
    const int n = state.num_qubits();
    for (int t = n - 1; t >= 0; --t) {
        apply_gate(state, GateOp::h(t));
        for (int c = t - 1; c >= 0; --c) {
            const double angle = 2.0 * M_PI / static_cast<double>(std::uint64_t{1} << (t - c + 1));
            apply_gate(state, GateOp::controlled_phase(c, t, angle));
        }
    }
    reverse_qubit_order(state);
}

void iqft(QubitState& state) {
    const int n = state.num_qubits();
    reverse_qubit_order(state);
    for (int t = 0; t < n; ++t) {
        for (int c = 0; c < t; ++c) {
            const double angle = -2.0 * M_PI / static_cast<double>(std::uint64_t{1} << (t - c + 1));
            apply_gate(state, GateOp::controlled_phase(c, t, angle));
        }
        apply_gate(state, GateOp::h(t));
    }
}

}  // namespace qdrive
