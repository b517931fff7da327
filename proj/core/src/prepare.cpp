#include "qdrive/prepare.hpp"

#include <cmath>

#include "qdrive/cost.hpp"
#include "qdrive/rng.hpp"

namespace qdrive {

namespace {

double infidelity_of(const QubitState& target, const AnsatzParams& params) {
    const double f = fidelity(target, ansatz_state(params));
    if (!std::isfinite(f)) {
        throw DivergenceError("prepare: non-finite cost");
    }
    return 1.0 - f;
}

}  // namespace

PrepareResult prepare(const QubitState& target, int p, const PrepareOptions& options,
                      std::uint64_t seed) {
    if (p < 0) {
        throw Error("prepare: depth must be >= 0");
    }
    const int n = target.num_qubits();
    PrepareResult best;
    best.params = AnsatzParams::zeros(p, n);
    best.fidelity = -1.0;

    Rng master(seed);
    for (int restart = 0; restart < options.restarts; ++restart) {
        Rng rng = master.split(restart);
        AnsatzParams params = AnsatzParams::zeros(p, n);
        for (auto& t : params.theta) {
            t = rng.uniform(-options.init_scale, options.init_scale);
        }

        double cost = infidelity_of(target, params);
        double lr = options.lr0;
        int iter = 0;
        for (; iter < options.max_iter && cost > options.target_infidelity; ++iter) {
            // Central finite differences over all angles.
            std::vector<double> grad(params.count());
            for (std::size_t i = 0; i < params.count(); ++i) {
                const double saved = params.theta[i];
                params.theta[i] = saved + options.fd_step;
                const double plus = infidelity_of(target, params);
                params.theta[i] = saved - options.fd_step;
                const double minus = infidelity_of(target, params);
                params.theta[i] = saved;
                grad[i] = (plus - minus) / (2.0 * options.fd_step);
            }

            bool accepted = false;
            while (lr > 1e-12) {
                AnsatzParams trial = params;
                for (std::size_t i = 0; i < trial.count(); ++i) {
                    trial.theta[i] -= lr * grad[i];
                }
                const double trial_cost = infidelity_of(target, trial);
                if (trial_cost < cost) {
                    params = std::move(trial);
                    cost = trial_cost;
                    accepted = true;
                    lr = std::min(lr * 1.5, 4.0);
                    break;
                }
                lr *= 0.5;
            }
            if (!accepted) {
                break;  // stationary to machine precision
            }
        }

        const double f = 1.0 - cost;
        if (f > best.fidelity) {
            best.fidelity = f;
            best.params = params;
            best.iterations = iter;
        }
    }
    return best;
}

}  // namespace qdrive
