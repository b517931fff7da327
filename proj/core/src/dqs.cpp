#include "qdrive/dqs.hpp"

#include <cmath>

namespace qdrive {

std::vector<GateOp> synth_quadratic(const QuadraticPhaseSpec& spec, int n, double step) {
    std::vector<GateOp> circuit;
    circuit.reserve(1 + n + n * (n - 1) / 2);
    circuit.push_back(
        GateOp::global_phase(-spec.dt * (spec.h * spec.x0 * spec.x0 + spec.sigma)));
    for (int q = 0; q < n; ++q) {
        const double p2q = static_cast<double>(std::uint64_t{1} << q);
        const double angle =
            -spec.dt * spec.h * (2.0 * spec.x0 * step * p2q + step * step * p2q * p2q);
        circuit.push_back(GateOp::phase(q, angle));
    }
    for (int q = 0; q < n; ++q) {
        for (int r = q + 1; r < n; ++r) {
            const double pow2 = static_cast<double>(std::uint64_t{1} << (q + r + 1));
            circuit.push_back(
                GateOp::controlled_phase(q, r, -spec.dt * spec.h * step * step * pow2));
        }
    }
    return circuit;
}

std::vector<GateOp> synth_quadratic(const QuadraticPhaseSpec& spec, const SpatialGrid& grid) {
    return synth_quadratic(spec, grid.n, grid.dx());
}

void potential_half_step(QubitState& state, double u, double dt, const SpatialGrid& grid) {
    QuadraticPhaseSpec spec;
    spec.h = 0.5 * u;
    spec.x0 = -grid.half_width;
    spec.sigma = 0.0;
    spec.dt = 0.5 * dt;
    const auto circuit = synth_quadratic(spec, grid.n, grid.dx());
    apply_circuit(state, circuit);
}

void kinetic_step(QubitState& state, double dt, const SpatialGrid& grid) {
    const int msb = grid.n - 1;
    QuadraticPhaseSpec spec;
    spec.h = 0.5;
    spec.x0 = -static_cast<double>(std::uint64_t{1} << msb) * grid.dk();
    spec.sigma = 0.0;
    spec.dt = dt;
    const auto circuit = synth_quadratic(spec, grid.n, grid.dk());

    iqft(state);
    apply_gate(state, GateOp::x(msb));
    apply_circuit(state, circuit);
    apply_gate(state, GateOp::x(msb));
    qft(state);
}

void trotter_evolve(QubitState& state, const ControlProtocol& protocol,
                    const SpatialGrid& grid) {
    protocol.validate_structure();
    const double dt = protocol.dt();
    for (int k = 0; k < protocol.nt; ++k) {
        potential_half_step(state, protocol.u[k], dt, grid);
        kinetic_step(state, dt, grid);
        potential_half_step(state, protocol.u[k], dt, grid);
    }
}

TrotterTape TrotterTape::build(const ControlProtocol& protocol, const SpatialGrid& grid) {
    TrotterTape tape;
    tape.nt = protocol.nt;
    tape.grid = grid;
    const double dt = protocol.dt();
    const double dx = grid.dx();
    const double x0 = -grid.half_width;
    const int n = grid.n;
    const int msb = n - 1;

    auto emit_potential_half = [&](int node) {
        // Angles of synth_quadratic with h = u/2 and prefactor dt/2: every
        // angle is linear in u with coefficient -dt/4 times the j-expansion
        // weight of the gate.
        const double u = protocol.u[node];
        const double c = -0.25 * dt;
        tape.instrs.push_back(
            {Op::Gate, GateOp::global_phase(c * u * x0 * x0), node, c * x0 * x0});
        for (int q = 0; q < n; ++q) {
            const double p2q = static_cast<double>(std::uint64_t{1} << q);
            const double w = 2.0 * x0 * dx * p2q + dx * dx * p2q * p2q;
            tape.instrs.push_back({Op::Gate, GateOp::phase(q, c * u * w), node, c * w});
        }
        for (int q = 0; q < n; ++q) {
            for (int r = q + 1; r < n; ++r) {
                const double w =
                    dx * dx * static_cast<double>(std::uint64_t{1} << (q + r + 1));
                tape.instrs.push_back(
                    {Op::Gate, GateOp::controlled_phase(q, r, c * u * w), node, c * w});
            }
        }
    };

    auto emit_kinetic = [&] {
        QuadraticPhaseSpec spec;
        spec.h = 0.5;
        spec.x0 = -static_cast<double>(std::uint64_t{1} << msb) * grid.dk();
        spec.dt = dt;
        tape.instrs.push_back({Op::Iqft, GateOp{}, -1, 0.0});
        tape.instrs.push_back({Op::Gate, GateOp::x(msb), -1, 0.0});
        for (const auto& g : synth_quadratic(spec, n, grid.dk())) {
            tape.instrs.push_back({Op::Gate, g, -1, 0.0});
        }
        tape.instrs.push_back({Op::Gate, GateOp::x(msb), -1, 0.0});
        tape.instrs.push_back({Op::Qft, GateOp{}, -1, 0.0});
    };

    for (int k = 0; k < protocol.nt; ++k) {
        emit_potential_half(k);
        emit_kinetic();
        emit_potential_half(k);
    }
    return tape;
}

void TrotterTape::run(QubitState& state) const {
    run_range(state, 0, instrs.size());
}

void TrotterTape::run_range(QubitState& state, std::size_t first, std::size_t last) const {
    for (std::size_t i = first; i < last; ++i) {
        const auto& in = instrs[i];
        switch (in.op) {
            case Op::Gate:
                apply_gate(state, in.gate);
                break;
            case Op::Qft:
                qft(state);
                break;
            case Op::Iqft:
                iqft(state);
                break;
        }
    }
}

}  // namespace qdrive
