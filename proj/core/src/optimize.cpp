#include "qdrive/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qdrive/rng.hpp"

namespace qdrive {

namespace {

double clamp(double v, double lo, double hi) {
    return std::min(std::max(v, lo), hi);
}

bool slew_ok(const std::vector<double>& u, double slew, double tol) {
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
        if (std::abs(u[k + 1] - u[k]) > slew + tol) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<double> project(std::vector<double> u, const Constraints& c) {
    c.validate();
    if (u.size() < 2) {
        throw Error("project: need at least two nodes");
    }
    const auto n = u.size();
    const double span = static_cast<double>(n - 1) * c.slew;
    if (std::abs(c.pin_start - c.pin_end) > span + 1e-12) {
        throw InfeasibleError("project: endpoint pins farther apart than N_t * slew");
    }
    for (auto& v : u) {
        v = clamp(v, c.lo, c.hi);
    }
    u.front() = c.pin_start;
    u.back() = c.pin_end;
    // Alternating sweeps pull every node inside the slew cone of both pins;
    // values stay in the box because each clamp target is in the box.
    for (std::size_t pass = 0; pass < n + 1; ++pass) {
        bool changed = false;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double lo = u[k] - c.slew;
            const double hi = u[k] + c.slew;
            const double next = clamp(u[k + 1], lo, hi);
            if (next != u[k + 1]) {
                u[k + 1] = next;
                changed = true;
            }
        }
        u.back() = c.pin_end;
        for (std::size_t k = n - 1; k > 0; --k) {
            const double lo = u[k] - c.slew;
            const double hi = u[k] + c.slew;
            const double prev = clamp(u[k - 1], lo, hi);
            if (prev != u[k - 1]) {
                u[k - 1] = prev;
                changed = true;
            }
        }
        u.front() = c.pin_start;
        if (!changed && slew_ok(u, c.slew, 0.0)) {
            break;
        }
    }
    if (!c.satisfied_by(u, 1e-9)) {
        throw InfeasibleError("project: failed to reach the feasible set");
    }
    return u;
}

std::vector<double> random_feasible_protocol(const Constraints& c, int nt, Rng& rng) {
    std::vector<double> u(nt + 1);
    for (int k = 1; k < nt; ++k) {
        u[k] = rng.uniform(c.lo, c.hi);
    }
    u[0] = c.pin_start;
    u[nt] = c.pin_end;
    return project(std::move(u), c);
}

GradientEstimate grad_fd(const CostFn& j, const std::vector<double>& u, double h) {
    GradientEstimate g;
    g.method = GradientEstimate::Method::FiniteDifference;
    g.du.assign(u.size(), 0.0);
    std::vector<double> probe = u;
    for (std::size_t k = 1; k + 1 < u.size(); ++k) {
        probe[k] = u[k] + h;
        const double plus = j(probe);
        probe[k] = u[k] - h;
        const double minus = j(probe);
        probe[k] = u[k];
        if (!std::isfinite(plus) || !std::isfinite(minus)) {
            throw DivergenceError("grad_fd: non-finite cost");
        }
        g.du[k] = (plus - minus) / (2.0 * h);
    }
    return g;
}

OptResult gd_minimize(const Objective& objective, std::vector<double> u0, const Constraints& c,
                      const GdOptions& options, std::uint64_t seed) {
    const auto t_start = std::chrono::steady_clock::now();
    OptResult result;
    result.record.seed = seed;
    result.record.optimizer = "gd";

    std::vector<double> u = project(std::move(u0), c);
    double cost = objective.value(u);
    if (!std::isfinite(cost)) {
        throw DivergenceError("gd_minimize: non-finite cost at the initial point");
    }

    auto record_iteration = [&](int iter) {
        RunRecord::Iteration it;
        it.iteration = iter;
        it.cost = cost;
        if (objective.exact_fidelity) {
            it.fidelity = objective.exact_fidelity(u);
        }
        it.u = u;
        result.record.iterations.push_back(std::move(it));
    };
    record_iteration(0);

    double lr = options.lr0;
    int stall = 0;
    result.status = OptStatus::MaxIterations;
    for (int iter = 1; iter <= options.max_iter; ++iter) {
        if (options.stop_infidelity > 0.0 && result.record.iterations.back().fidelity &&
            1.0 - *result.record.iterations.back().fidelity <= options.stop_infidelity) {
            result.status = OptStatus::Converged;
            break;
        }
        const GradientEstimate grad = objective.gradient(u);

        bool accepted = false;
        bool diverged = false;
        while (lr > options.lr_min) {
            std::vector<double> trial = u;
            for (std::size_t k = 0; k < trial.size(); ++k) {
                trial[k] -= lr * grad.du[k];
            }
            trial = project(std::move(trial), c);
            const double trial_cost = objective.value(trial);
            if (!std::isfinite(trial_cost)) {
                diverged = true;
                break;
            }
            if (trial_cost < cost) {
                const double drop = cost - trial_cost;
                u = std::move(trial);
                cost = trial_cost;
                accepted = true;
                lr = std::min(lr * options.lr_growth, options.lr0 * 1e3);
                stall = (drop < options.tol) ? stall + 1 : 0;
                break;
            }
            lr *= 0.5;
        }
        if (diverged) {
            result.status = OptStatus::Diverged;
            break;
        }
        if (!accepted) {
            result.status = OptStatus::Converged;  // stationary to machine precision
            break;
        }
        record_iteration(iter);
        if (stall >= options.tol_window) {
            result.status = OptStatus::Converged;
            break;
        }
    }

    result.u = u;
    result.final_cost = cost;
    result.record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

OptResult spsa_minimize(const CostFn& noisy_value, std::vector<double> u0, const Constraints& c,
                        const SpsaOptions& options, std::uint64_t seed,
                        const CostFn& exact_fidelity) {
    const auto t_start = std::chrono::steady_clock::now();
    OptResult result;
    result.record.seed = seed;
    result.record.optimizer = "spsa";

    std::vector<double> u = project(std::move(u0), c);
    Rng rng(seed);
    const auto n = u.size();

    for (int k = 0; k < options.max_iter; ++k) {
        const double ak = options.a / std::pow(k + 1.0 + options.big_a, options.alpha);
        const double ck = options.c / std::pow(k + 1.0, options.gamma);

        std::vector<double> delta(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            delta[i] = static_cast<double>(rng.rademacher());
        }
        std::vector<double> up = u;
        std::vector<double> um = u;
        for (std::size_t i = 0; i < n; ++i) {
            up[i] += ck * delta[i];
            um[i] -= ck * delta[i];
        }
        up = project(std::move(up), c);
        um = project(std::move(um), c);
        const double yp = noisy_value(up);
        const double ym = noisy_value(um);

        std::vector<double> trial = u;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            trial[i] -= ak * (yp - ym) / (2.0 * ck * delta[i]);
        }
        u = project(std::move(trial), c);

        RunRecord::Iteration it;
        it.iteration = k;
        it.cost = 0.5 * (yp + ym);
        if (exact_fidelity) {
            it.fidelity = exact_fidelity(u);
        }
        it.u = u;
        result.record.iterations.push_back(std::move(it));
    }

    result.u = u;
    result.final_cost =
        result.record.iterations.empty() ? 0.0 : result.record.iterations.back().cost;
    result.status = OptStatus::MaxIterations;
    result.record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

}  // namespace qdrive
