#include "qdrive/gradients.hpp"

#include <algorithm>
#include <cmath>

#include "qdrive/rng.hpp"

namespace qdrive {

namespace {

using Instr = TrotterTape::Instr;

bool differentiable(const Instr& in, int nt) {
    if (in.op != TrotterTape::Op::Gate || in.node < 1 || in.node > nt - 1) {
        return false;
    }
    // Global phases cannot move any |overlap|-based cost.
    return in.gate.kind == GateKind::Phase || in.gate.kind == GateKind::ControlledPhase;
}

GateOp inverse_of(const GateOp& g) {
    switch (g.kind) {
        case GateKind::Phase:
        case GateKind::ControlledPhase:
        case GateKind::Rx:
        case GateKind::Rz:
        case GateKind::GlobalPhase: {
            GateOp inv = g;
            inv.angle = -g.angle;
            return inv;
        }
        case GateKind::X:
        case GateKind::Cnot:
        case GateKind::H:
            return g;
    }
    return g;
}

void apply_adjoint(QubitState& state, const Instr& in) {
    switch (in.op) {
        case TrotterTape::Op::Gate:
            apply_gate(state, inverse_of(in.gate));
            break;
        case TrotterTape::Op::Qft:
            iqft(state);
            break;
        case TrotterTape::Op::Iqft:
            qft(state);
            break;
    }
}

/**
 * dF/dtheta for a single-qubit phase gate, from the exact two-point shift
 * F(theta + pi/2) - F(theta - pi/2) over 2. The shifted fidelities come from
 * the partial overlaps S0/S1 of <w| and |v> split by the target bit.
 */
double phase_shift_derivative(const QubitState& w, const QubitState& v, int q, double theta) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    cplx s0{0.0, 0.0};
    cplx s1{0.0, 0.0};
    for (std::uint64_t i = 0; i < v.dim(); ++i) {
        const cplx term = std::conj(w[i]) * v[i];
        if (i & bit) {
            s1 += term;
        } else {
            s0 += term;
        }
    }
    const double f_plus = std::norm(s0 + std::polar(1.0, theta + M_PI / 2.0) * s1);
    const double f_minus = std::norm(s0 + std::polar(1.0, theta - M_PI / 2.0) * s1);
    return 0.5 * (f_plus - f_minus);
}

/**
 * dF/dtheta for a controlled phase through its three-rotation decomposition
 *   cphase(theta) = e^{i theta/4} Rz_a(theta/2) Rz_b(theta/2) Rzz_ab(-theta/2),
 * each factor obeying the +/- pi/2 rule. Partial overlaps are split by the
 * two target bits, so every shifted fidelity is O(1) after one pass.
 */
double cphase_shift_derivative(const QubitState& w, const QubitState& v, int qa, int qb,
                               double theta) {
    const std::uint64_t bit_a = std::uint64_t{1} << qa;
    const std::uint64_t bit_b = std::uint64_t{1} << qb;
    cplx s[2][2] = {{{0.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}}};
    for (std::uint64_t i = 0; i < v.dim(); ++i) {
        s[(i & bit_a) ? 1 : 0][(i & bit_b) ? 1 : 0] += std::conj(w[i]) * v[i];
    }
    const double g = theta / 4.0;
    auto amp = [&](double phi1, double phi2, double phi3) {
        cplx a{0.0, 0.0};
        for (int ba = 0; ba < 2; ++ba) {
            for (int bb = 0; bb < 2; ++bb) {
                const double za = 1.0 - 2.0 * ba;
                const double zb = 1.0 - 2.0 * bb;
                const double phase =
                    g + phi1 * (ba - 0.5) + phi2 * (bb - 0.5) - 0.5 * phi3 * za * zb;
                a += s[ba][bb] * std::polar(1.0, phase);
            }
        }
        return a;
    };
    const double half = theta / 2.0;
    const double s2 = M_PI / 2.0;
    double d = 0.0;
    d += 0.5 * 0.5 * (std::norm(amp(half + s2, half, -half)) - std::norm(amp(half - s2, half, -half)));
    d += 0.5 * 0.5 * (std::norm(amp(half, half + s2, -half)) - std::norm(amp(half, half - s2, -half)));
    d -= 0.5 * 0.5 * (std::norm(amp(half, half, -half + s2)) - std::norm(amp(half, half, -half - s2)));
    return d;
}

void check_linear(const TrotterTape& tape, const std::vector<double>& u) {
    for (const auto& in : tape.instrs) {
        if (in.op != TrotterTape::Op::Gate || in.node < 0) {
            continue;
        }
        const double expected = in.dangle_du * u[in.node];
        if (std::abs(in.gate.angle - expected) >
            1e-9 * std::max(1.0, std::abs(expected))) {
            throw UnsupportedParameterizationError(
                "grad_shift: gate angle is not linear in its control node");
        }
    }
}

}  // namespace

GradientEstimate grad_shift(const ControlProblem& problem, const std::vector<double>& u) {
    const ControlProtocol protocol = problem.protocol_for(u);
    const TrotterTape tape = TrotterTape::build(protocol, problem.grid);
    const int nt = protocol.nt;
    check_linear(tape, u);

    // Forward sweep, caching the state in front of every differentiable gate.
    std::vector<QubitState> cache;
    std::vector<std::size_t> cache_at;
    QubitState v = problem.psi0;
    for (std::size_t i = 0; i < tape.instrs.size(); ++i) {
        if (differentiable(tape.instrs[i], nt)) {
            cache.push_back(v);
            cache_at.push_back(i);
        }
        tape.run_range(v, i, i + 1);
    }

    const double f0 = fidelity(problem.target, v);
    const double dj_df = problem.cost.dvalue_df(f0);

    GradientEstimate grad;
    grad.method = GradientEstimate::Method::ParameterShift;
    grad.du.assign(u.size(), 0.0);

    // Adjoint sweep: before handling instruction i, w = (suffix after i)^dag |target>.
    QubitState w = problem.target;
    std::size_t ci = cache.size();
    for (std::size_t idx = tape.instrs.size(); idx-- > 0;) {
        const Instr& in = tape.instrs[idx];
        if (differentiable(in, nt)) {
            --ci;
            const QubitState& pre = cache[ci];
            double df_dtheta = 0.0;
            if (in.gate.kind == GateKind::Phase) {
                df_dtheta = phase_shift_derivative(w, pre, in.gate.q0, in.gate.angle);
            } else {
                df_dtheta =
                    cphase_shift_derivative(w, pre, in.gate.q0, in.gate.q1, in.gate.angle);
            }
            grad.du[in.node] += in.dangle_du * dj_df * df_dtheta;
        }
        apply_adjoint(w, in);
    }
    grad.du.front() = 0.0;
    grad.du.back() = 0.0;
    return grad;
}

double fidelity_with_shift(const TrotterTape& tape, const QubitState& psi0,
                           const QubitState& target, std::size_t instr_index,
                           double delta_angle) {
    QubitState state = psi0;
    tape.run_range(state, 0, instr_index);
    Instr shifted = tape.instrs[instr_index];
    shifted.gate.angle += delta_angle;
    if (shifted.op == TrotterTape::Op::Gate) {
        apply_gate(state, shifted.gate);
    } else {
        tape.run_range(state, instr_index, instr_index + 1);
    }
    tape.run_range(state, instr_index + 1, tape.instrs.size());
    return fidelity(target, state);
}

std::size_t representative_gate_index(const TrotterTape& tape) {
    // Single-qubit phase angles have an exact parity-forced zero fidelity
    // derivative for centered-Gaussian problems (the whole circuit and both
    // states are even under x -> -x), so the representative trainable
    // parameter is a controlled phase of the middle node's block. The pair
    // (n-4, n-3) addresses the position scale dx * 2^q of the wave packet
    // itself and its angle coefficient dx^2 * 2^{2q+2} is n-independent, so
    // the same physical gate is probed at every register size. Its angle is
    // single-frequency in theta, so the +/- pi/2 two-point rule is exact.
    const int mid = tape.nt / 2;
    const int qa = std::max(0, tape.grid.n - 4);
    for (std::size_t i = 0; i < tape.instrs.size(); ++i) {
        const auto& in = tape.instrs[i];
        if (in.op == TrotterTape::Op::Gate && in.node == mid &&
            in.gate.kind == GateKind::ControlledPhase && in.gate.q0 == qa &&
            in.gate.q1 == qa + 1) {
            return i;
        }
    }
    throw Error("representative_gate_index: no matching gate (empty tape?)");
}

double avg_abs_gradient(const BarrenScanOptions& options,
                        const std::function<double(double)>& cost_of_fidelity) {
    ExpansionSetup setup;
    setup.n = options.n;
    setup.t_f = options.t_f;
    const ControlProblem problem = make_expansion_problem(setup);
    const auto cost = cost_of_fidelity ? cost_of_fidelity : [](double f) { return f; };

    Rng master(options.seed);
    double total = 0.0;
    for (int i = 0; i < options.samples; ++i) {
        Rng rng = master.split(i);
        const auto u = random_feasible_protocol(problem.bounds, options.nt, rng);
        const TrotterTape tape = TrotterTape::build(problem.protocol_for(u), problem.grid);
        const std::size_t idx = representative_gate_index(tape);
        const double j_plus =
            cost(fidelity_with_shift(tape, problem.psi0, problem.target, idx, M_PI / 2.0));
        const double j_minus =
            cost(fidelity_with_shift(tape, problem.psi0, problem.target, idx, -M_PI / 2.0));
        total += 0.5 * std::abs(j_plus - j_minus);
    }
    return total / static_cast<double>(options.samples);
}

ShiftCoefficientStats shift_coefficient_scan(const BarrenScanOptions& options) {
    ExpansionSetup setup;
    setup.n = options.n;
    setup.t_f = options.t_f;
    const ControlProblem problem = make_expansion_problem(setup);

    Rng master(options.seed ^ 0x5c4f00dULL);
    std::vector<double> ratios;
    ratios.reserve(options.samples);
    for (int i = 0; i < options.samples; ++i) {
        Rng rng = master.split(i);
        const auto u = random_feasible_protocol(problem.bounds, options.nt, rng);
        const TrotterTape tape = TrotterTape::build(problem.protocol_for(u), problem.grid);
        const std::size_t idx = representative_gate_index(tape);
        const double d_theta =
            0.5 * (fidelity_with_shift(tape, problem.psi0, problem.target, idx, M_PI / 2.0) -
                   fidelity_with_shift(tape, problem.psi0, problem.target, idx, -M_PI / 2.0));
        if (d_theta == 0.0) {
            continue;  // measure-zero: ratio undefined at an exact stationary angle
        }
        const double d_control = tape.instrs[idx].dangle_du * d_theta;
        ratios.push_back(std::abs(d_control / d_theta));
    }

    ShiftCoefficientStats stats;
    stats.valid_samples = static_cast<int>(ratios.size());
    if (ratios.empty()) {
        return stats;
    }
    double mean = 0.0;
    for (double r : ratios) {
        mean += r;
    }
    mean /= static_cast<double>(ratios.size());
    double var = 0.0;
    for (double r : ratios) {
        var += (r - mean) * (r - mean);
    }
    var /= static_cast<double>(ratios.size());
    stats.mean_abs = mean;
    stats.rel_std = (mean != 0.0) ? std::sqrt(var) / std::abs(mean) : 0.0;
    return stats;
}

}  // namespace qdrive
