#include "qdrive/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qdrive {

void Constraints::validate() const {
    if (!(lo <= hi)) {
        throw InfeasibleError("constraints: lo > hi");
    }
    if (slew < 0.0) {
        throw InfeasibleError("constraints: negative slew limit");
    }
    if (pin_start < lo - 1e-15 || pin_start > hi + 1e-15 || pin_end < lo - 1e-15 ||
        pin_end > hi + 1e-15) {
        throw InfeasibleError("constraints: endpoint pins outside [lo, hi]");
    }
}

bool Constraints::satisfied_by(const std::vector<double>& u, double tol) const {
    if (u.size() < 2) {
        return false;
    }
    if (std::abs(u.front() - pin_start) > tol || std::abs(u.back() - pin_end) > tol) {
        return false;
    }
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] < lo - tol || u[k] > hi + tol) {
            return false;
        }
        if (k + 1 < u.size() && std::abs(u[k + 1] - u[k]) > slew + tol) {
            return false;
        }
    }
    return true;
}

void ControlProtocol::validate_structure() const {
    if (nt < 1) {
        throw Error("protocol: nt must be >= 1");
    }
    if (!(t_f > 0.0) || !std::isfinite(t_f)) {
        throw Error("protocol: t_f must be positive and finite");
    }
    if (u.size() != static_cast<std::size_t>(nt + 1)) {
        throw Error("protocol: expected " + std::to_string(nt + 1) + " node values, got " +
                    std::to_string(u.size()));
    }
}

void ControlProtocol::validate() const {
    validate_structure();
    bounds.validate();
    if (!bounds.satisfied_by(u, 1e-9)) {
        throw InfeasibleError("protocol: node values violate constraints");
    }
}

ControlProtocol linear_ramp(int nt, double t_f, const Constraints& bounds) {
    ControlProtocol p;
    p.nt = nt;
    p.t_f = t_f;
    p.bounds = bounds;
    p.u.resize(nt + 1);
    for (int k = 0; k <= nt; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(nt);
        p.u[k] = bounds.pin_start + (bounds.pin_end - bounds.pin_start) * s;
    }
    p.u.front() = bounds.pin_start;
    p.u.back() = bounds.pin_end;
    return p;
}

ControlProtocol constant_protocol(int nt, double t_f, double value) {
    ControlProtocol p;
    p.nt = nt;
    p.t_f = t_f;
    p.u.assign(nt + 1, value);
    p.bounds.lo = std::min(value, 0.0);
    p.bounds.hi = std::max(value, 1.0);
    p.bounds.slew = std::max(1.0, std::abs(value));
    p.bounds.pin_start = value;
    p.bounds.pin_end = value;
    return p;
}

double PiecewiseControl::operator()(double t) const {
    if (t <= edges.front()) {
        return values.front();
    }
    const auto it = std::upper_bound(edges.begin(), edges.end(), t);
    const auto i = static_cast<std::size_t>(std::distance(edges.begin(), it));
    return values[std::min(i - 1, values.size() - 1)];
}

}  // namespace qdrive
