#include "qdrive/problems.hpp"

#include <memory>

#include "qdrive/encode.hpp"
#include "qdrive/gradients.hpp"
#include "qdrive/oracle.hpp"

namespace qdrive {

ControlProtocol ControlProblem::protocol_for(const std::vector<double>& u) const {
    ControlProtocol p;
    p.nt = static_cast<int>(u.size()) - 1;
    p.t_f = t_f;
    p.u = u;
    p.bounds = bounds;
    return p;
}

QubitState ControlProblem::evolve(const std::vector<double>& u) const {
    QubitState state = psi0;
    trotter_evolve(state, protocol_for(u), grid);
    return state;
}

double ControlProblem::fidelity_of(const std::vector<double>& u) const {
    return fidelity(target, evolve(u));
}

double ControlProblem::cost_of(const std::vector<double>& u) const {
    return cost.value(fidelity_of(u));
}

Objective ControlProblem::objective_shift() const {
    auto self = std::make_shared<const ControlProblem>(*this);
    Objective obj;
    obj.value = [self](const std::vector<double>& u) { return self->cost_of(u); };
    obj.gradient = [self](const std::vector<double>& u) { return grad_shift(*self, u); };
    obj.exact_fidelity = [self](const std::vector<double>& u) { return self->fidelity_of(u); };
    return obj;
}

Objective ControlProblem::objective_fd(double h) const {
    auto self = std::make_shared<const ControlProblem>(*this);
    Objective obj;
    obj.value = [self](const std::vector<double>& u) { return self->cost_of(u); };
    obj.gradient = [self, h](const std::vector<double>& u) {
        return grad_fd([self](const std::vector<double>& v) { return self->cost_of(v); }, u, h);
    };
    obj.exact_fidelity = [self](const std::vector<double>& u) { return self->fidelity_of(u); };
    return obj;
}

ControlProblem make_expansion_problem(const ExpansionSetup& setup) {
    ControlProblem problem;
    problem.grid = SpatialGrid{setup.n, setup.half_width};
    problem.psi0 = to_register(gaussian_state(1.0, 0.0, problem.grid));
    problem.target = to_register(gaussian_state(setup.gamma, 0.0, problem.grid));
    problem.t_f = setup.t_f;
    problem.bounds.lo = setup.d1;
    problem.bounds.hi = setup.d2;
    problem.bounds.slew = setup.slew;
    problem.bounds.pin_start = 1.0;
    const double g2 = setup.gamma * setup.gamma;
    problem.bounds.pin_end = 1.0 / (g2 * g2);
    problem.cost = setup.cost;
    return problem;
}

}  // namespace qdrive
