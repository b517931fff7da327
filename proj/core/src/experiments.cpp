#include "qdrive/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <thread>

#include "qdrive/encode.hpp"
#include "qdrive/gradients.hpp"
#include "qdrive/oracle.hpp"
#include "qdrive/prepare.hpp"
#include "qdrive/rng.hpp"
#include "qdrive/version.hpp"

namespace qdrive {

namespace {

int resolved_max_iter(const ExperimentConfig& config, int fallback) {
    return config.max_iter > 0 ? config.max_iter : fallback;
}

CostKind cost_from_config(const ExperimentConfig& config) {
    if (config.cost == "IF") {
        return CostKind::infidelity();
    }
    if (config.cost == "BA") {
        return CostKind::bures_angle();
    }
    return CostKind::fidelity_susceptibility(config.delta_f);
}

std::vector<double> tf_grid(const ExperimentConfig& config) {
    std::vector<double> grid(config.t_f_points);
    for (int i = 0; i < config.t_f_points; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(config.t_f_points - 1);
        grid[i] = config.t_f_min + (config.t_f_max - config.t_f_min) * s;
    }
    return grid;
}

/// Collects tables and errors for one run; writes everything at the end.
struct Emitter {
    std::filesystem::path dir;
    RunManifest manifest;

    void table(const std::string& name, const CsvTable& t) {
        write_csv(t, dir / name);
        manifest.outputs.push_back(name);
    }

    void stat(const std::string& key, double value) {
        manifest.stats.emplace_back(key, value);
    }
};

}  // namespace

ExpansionSetup setup_from_config(const ExperimentConfig& config) {
    ExpansionSetup setup;
    setup.n = config.n;
    setup.half_width = config.half_width;
    setup.gamma = config.gamma();
    setup.d1 = config.d1;
    setup.d2 = config.d2;
    setup.slew = config.slew;
    setup.t_f = config.t_f;
    setup.cost = cost_from_config(config);
    return setup;
}

std::vector<double> jittered_ramp(const Constraints& c, int nt, double jitter,
                                  std::uint64_t seed) {
    ControlProtocol ramp = linear_ramp(nt, 1.0, c);
    if (jitter > 0.0) {
        Rng rng(seed);
        for (int k = 1; k < nt; ++k) {
            ramp.u[k] += rng.uniform(-jitter, jitter);
        }
    }
    return project(std::move(ramp.u), c);
}

OptResult train_protocol(const ControlProblem& problem, std::vector<double> u0,
                         const TrainOptions& options) {
    GdOptions gd;
    gd.lr0 = options.lr0;
    gd.max_iter = options.max_iter;
    gd.tol = options.tol;
    gd.stop_infidelity = options.stop_infidelity;
    const Objective objective =
        options.use_shift ? problem.objective_shift() : problem.objective_fd();
    return gd_minimize(objective, std::move(u0), problem.bounds, gd);
}

MaxFidelityResult train_max_fidelity(const ExpansionSetup& setup, int nt,
                                     const TrainOptions& options) {
    const ControlProblem problem = make_expansion_problem(setup);
    MaxFidelityResult result;

    auto ramp = linear_ramp(nt, setup.t_f, problem.bounds);
    result.opt = train_protocol(problem, ramp.u, options);
    result.fidelity = problem.fidelity_of(result.opt.u);
    result.init_used = "ramp";

    if (result.fidelity < 0.9995) {
        // Second start: the bang-bang node pattern time-rescaled onto this
        // t_f (same node values), projected onto the cell constraints.
        try {
            const auto bb = bangbang_protocol(setup.gamma, setup.d1, setup.d2, nt);
            auto u0 = project(bb.u, problem.bounds);
            OptResult alt = train_protocol(problem, std::move(u0), options);
            const double alt_f = problem.fidelity_of(alt.u);
            if (alt_f > result.fidelity) {
                result.opt = std::move(alt);
                result.fidelity = alt_f;
                result.init_used = "bangbang";
            }
        } catch (const Error&) {
            // infeasible rescaled start: keep the ramp result
        }
    }
    return result;
}

int iterations_to_infidelity(const RunRecord& record, double threshold) {
    for (const auto& it : record.iterations) {
        if (it.fidelity && 1.0 - *it.fidelity <= threshold) {
            return it.iteration;
        }
    }
    return static_cast<int>(record.iterations.size());
}

double plateau_infidelity(const RunRecord& record, double fraction) {
    if (record.iterations.empty()) {
        throw Error("plateau_infidelity: empty record");
    }
    const std::size_t count = std::max<std::size_t>(
        1, static_cast<std::size_t>(fraction * record.iterations.size()));
    std::vector<double> tail;
    tail.reserve(count);
    for (std::size_t i = record.iterations.size() - count; i < record.iterations.size(); ++i) {
        const auto& it = record.iterations[i];
        if (!it.fidelity) {
            throw Error("plateau_infidelity: record has no fidelity trace");
        }
        tail.push_back(1.0 - *it.fidelity);
    }
    std::sort(tail.begin(), tail.end());
    const std::size_t m = tail.size();
    return (m % 2 == 1) ? tail[m / 2] : 0.5 * (tail[m / 2 - 1] + tail[m / 2]);
}

std::vector<GateOp> target_uncompute_circuit(const QubitState& target, int depth,
                                             std::uint64_t seed) {
    PrepareOptions options;
    const PrepareResult prep = prepare(target, depth, options, seed);
    return inverse_circuit(ansatz_circuit(prep.params));
}

CostFn make_noisy_objective(const ControlProblem& problem, std::uint64_t shots, double beta,
                            std::uint64_t seed, std::vector<GateOp> uncompute) {
    auto self = std::make_shared<const ControlProblem>(problem);
    auto counter = std::make_shared<std::atomic<std::uint64_t>>(0);
    auto gates = std::make_shared<const std::vector<GateOp>>(std::move(uncompute));
    return [self, counter, gates, shots, beta, seed](const std::vector<double>& u) {
        QubitState final_state = self->evolve(u);
        apply_circuit(final_state, *gates);
        const std::uint64_t eval_seed = Rng::derive(seed, counter->fetch_add(1));
        const CountsHistogram counts = sample(final_state, shots, beta, eval_seed);
        const auto hit = counts.counts.find(0);
        const double success =
            hit == counts.counts.end()
                ? 0.0
                : static_cast<double>(hit->second) / static_cast<double>(shots);
        return 1.0 - success;
    };
}

void for_each_index(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (count == 0) {
        return;
    }
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

namespace {

// ---------------------------------------------------------------- prep-grid

void run_prep_grid(const ExperimentConfig& config, int threads, Emitter& emit,
                   std::vector<std::string>& errors, int& total_cells) {
    struct Cell {
        int n;
        int p;
        double fidelity = 0.0;
        int iterations = 0;
        bool ok = false;
    };
    std::vector<Cell> cells;
    for (int n = config.prep_n_min; n <= config.prep_n_max; ++n) {
        for (int p = config.prep_p_min; p <= config.prep_p_max; ++p) {
            cells.push_back({n, p, 0.0, 0, false});
        }
    }
    total_cells = static_cast<int>(cells.size());
    errors.assign(cells.size(), "");

    const std::uint64_t master = config.master_seed();
    for_each_index(cells.size(), threads, [&](std::size_t i) {
        try {
            auto& cell = cells[i];
            const SpatialGrid grid{cell.n, config.half_width};
            const QubitState target = to_register(gaussian_state(1.0, 0.0, grid));
            PrepareOptions options;
            options.max_iter = resolved_max_iter(config, 500);
            const PrepareResult res = prepare(target, cell.p, options, Rng::derive(master, i));
            cell.fidelity = res.fidelity;
            cell.iterations = res.iterations;
            cell.ok = true;
        } catch (const std::exception& e) {
            errors[i] = std::string("cell ") + std::to_string(i) + ": " + e.what();
        }
    });

    CsvTable table;
    table.header = {"n", "p", "fidelity", "iterations"};
    for (const auto& cell : cells) {
        if (cell.ok) {
            table.add_row({static_cast<std::int64_t>(cell.n), static_cast<std::int64_t>(cell.p),
                           cell.fidelity, static_cast<std::int64_t>(cell.iterations)});
        }
    }
    emit.table("prep_grid.csv", table);
}

// ---------------------------------------------------------------- cost-race

void run_cost_race(const ExperimentConfig& config, int threads, Emitter& emit,
                   std::vector<std::string>& errors, int& total_cells) {
    struct Cell {
        CostKind cost;
        std::uint64_t seed;
        OptResult result;
        bool ok = false;
    };
    std::vector<Cell> cells;
    for (std::uint64_t seed : config.seeds) {
        cells.push_back({CostKind::infidelity(), seed, {}, false});
        cells.push_back({CostKind::bures_angle(), seed, {}, false});
        for (double df : config.delta_f_grid) {
            cells.push_back({CostKind::fidelity_susceptibility(df), seed, {}, false});
        }
    }
    total_cells = static_cast<int>(cells.size());
    errors.assign(cells.size(), "");

    const ExpansionSetup base = setup_from_config(config);
    for_each_index(cells.size(), threads, [&](std::size_t i) {
        try {
            auto& cell = cells[i];
            ExpansionSetup setup = base;
            setup.cost = cell.cost;
            const ControlProblem problem = make_expansion_problem(setup);
            TrainOptions options;
            options.max_iter = resolved_max_iter(config, 400);
            options.lr0 = config.lr0;
            options.tol = config.tol;
            options.stop_infidelity = 1e-4;
            options.use_shift = config.gradient == "shift";
            auto u0 = jittered_ramp(problem.bounds, config.nt, config.init_jitter, cell.seed);
            cell.result = train_protocol(problem, std::move(u0), options);
            cell.result.record.seed = cell.seed;
            cell.ok = true;
        } catch (const std::exception& e) {
            errors[i] = std::string("cell ") + std::to_string(i) + ": " + e.what();
        }
    });

    CsvTable curves;
    curves.header = {"cost", "delta_f", "seed", "iteration", "cost_value", "infidelity"};
    CsvTable summary;
    summary.header = {"cost", "delta_f", "seed", "iterations_to_1e-3", "final_fidelity"};
    for (const auto& cell : cells) {
        if (!cell.ok) {
            continue;
        }
        const double df =
            cell.cost.tag == CostKind::Tag::FidelitySusceptibility ? cell.cost.delta_f : 0.0;
        for (const auto& it : cell.result.record.iterations) {
            curves.add_row({cell.cost.label(), df, static_cast<std::int64_t>(cell.seed),
                            static_cast<std::int64_t>(it.iteration), it.cost,
                            it.fidelity ? 1.0 - *it.fidelity : -1.0});
        }
        const auto& last = cell.result.record.iterations.back();
        summary.add_row({cell.cost.label(), df, static_cast<std::int64_t>(cell.seed),
                         static_cast<std::int64_t>(
                             iterations_to_infidelity(cell.result.record, 1e-3)),
                         last.fidelity ? *last.fidelity : -1.0});
    }
    emit.table("cost_race_curves.csv", curves);
    emit.table("cost_race_summary.csv", summary);
}

// -------------------------------------------------------------- trotter-grid

void run_trotter_grid(const ExperimentConfig& config, int threads, Emitter& emit,
                      std::vector<std::string>& errors, int& total_cells) {
    struct Cell {
        int nt;
        double slew;
        double fidelity = 0.0;
        int iterations = 0;
        std::vector<double> u;
        bool ok = false;
    };
    std::vector<Cell> cells;
    for (int nt : config.nt_values) {
        for (double slew : config.slew_values) {
            cells.push_back({nt, slew, 0.0, 0, {}, false});
        }
    }
    total_cells = static_cast<int>(cells.size());
    errors.assign(cells.size(), "");

    const ExpansionSetup base = setup_from_config(config);
    for_each_index(cells.size(), threads, [&](std::size_t i) {
        try {
            auto& cell = cells[i];
            ExpansionSetup setup = base;
            setup.slew = cell.slew;
            const ControlProblem problem = make_expansion_problem(setup);
            TrainOptions options;
            options.max_iter = resolved_max_iter(config, 400);
            options.lr0 = config.lr0;
            options.stop_infidelity = 1e-5;
            options.use_shift = config.gradient == "shift";
            const auto ramp = linear_ramp(cell.nt, setup.t_f, problem.bounds);
            OptResult res = train_protocol(problem, ramp.u, options);
            cell.fidelity = problem.fidelity_of(res.u);
            cell.iterations = static_cast<int>(res.record.iterations.size());
            cell.u = res.u;
            cell.ok = true;
        } catch (const std::exception& e) {
            errors[i] = std::string("cell ") + std::to_string(i) + ": " + e.what();
        }
    });

    CsvTable grid_table;
    grid_table.header = {"nt", "slew", "fidelity", "iterations"};
    CsvTable protocols;
    protocols.header = {"case", "nt", "slew", "node", "t", "u"};
    for (const auto& cell : cells) {
        if (!cell.ok) {
            continue;
        }
        grid_table.add_row({static_cast<std::int64_t>(cell.nt), cell.slew, cell.fidelity,
                            static_cast<std::int64_t>(cell.iterations)});
        const double dt = config.t_f / cell.nt;
        for (std::size_t k = 0; k < cell.u.size(); ++k) {
            protocols.add_row({std::string("trained"), static_cast<std::int64_t>(cell.nt),
                               cell.slew, static_cast<std::int64_t>(k),
                               static_cast<double>(k) * dt, cell.u[k]});
        }
    }
    // Bang-bang overlay at the configured nt.
    try {
        const auto bb = bangbang_protocol(config.gamma(), config.d1, config.d2, config.nt);
        for (std::size_t k = 0; k < bb.u.size(); ++k) {
            protocols.add_row({std::string("bangbang"), static_cast<std::int64_t>(config.nt),
                               0.0, static_cast<std::int64_t>(k), bb.node_time(k), bb.u[k]});
        }
    } catch (const Error&) {
        // bounds without a feasible bang-bang: no overlay
    }
    emit.table("trotter_grid.csv", grid_table);
    emit.table("trotter_protocols.csv", protocols);
}

// ------------------------------------------------------------- phase-diagram

void run_phase_diagram(const ExperimentConfig& config, int threads, Emitter& emit,
                       std::vector<std::string>& errors, int& total_cells) {
    struct Cell {
        double t_f;
        int nt;
        double fidelity = 0.0;
        std::string init_used;
        std::vector<double> u;
        bool ok = false;
    };
    const auto tfs = tf_grid(config);
    std::vector<Cell> cells;
    for (double tf : tfs) {
        for (int nt : config.nt_values) {
            cells.push_back({tf, nt, 0.0, "", {}, false});
        }
    }
    total_cells = static_cast<int>(cells.size());
    errors.assign(cells.size(), "");

    const ExpansionSetup base = setup_from_config(config);
    for_each_index(cells.size(), threads, [&](std::size_t i) {
        try {
            auto& cell = cells[i];
            ExpansionSetup setup = base;
            setup.t_f = cell.t_f;
            TrainOptions options;
            options.max_iter = resolved_max_iter(config, 400);
            options.lr0 = config.lr0;
            options.stop_infidelity = 1e-4;
            options.use_shift = config.gradient == "shift";
            const MaxFidelityResult res = train_max_fidelity(setup, cell.nt, options);
            cell.fidelity = res.fidelity;
            cell.init_used = res.init_used;
            cell.u = res.opt.u;
            cell.ok = true;
        } catch (const std::exception& e) {
            errors[i] = std::string("cell ") + std::to_string(i) + ": " + e.what();
        }
    });

    // Wide protocol table for the configured nt.
    CsvTable protocols;
    protocols.header = {"t_f", "fidelity", "init"};
    for (int k = 0; k <= config.nt; ++k) {
        protocols.header.push_back("u" + std::to_string(k));
    }
    CsvTable nt_table;
    nt_table.header = {"t_f", "nt", "fidelity", "log10_infidelity"};
    double transition = -1.0;
    for (const auto& cell : cells) {
        if (!cell.ok) {
            continue;
        }
        const double infidelity = std::max(1.0 - cell.fidelity, 1e-16);
        nt_table.add_row({cell.t_f, static_cast<std::int64_t>(cell.nt), cell.fidelity,
                          std::log10(infidelity)});
        if (cell.nt == config.nt) {
            std::vector<CsvValue> row = {cell.t_f, cell.fidelity, cell.init_used};
            for (double v : cell.u) {
                row.push_back(v);
            }
            protocols.add_row(std::move(row));
            if (transition < 0.0 && cell.fidelity >= 0.999) {
                transition = cell.t_f;
            }
        }
    }
    emit.table("phase_protocols.csv", protocols);
    emit.table("phase_nt_grid.csv", nt_table);
    if (transition >= 0.0) {
        emit.stat("transition_tf", transition);
        emit.stat("transition_grid_spacing",
                  (config.t_f_max - config.t_f_min) / (config.t_f_points - 1));
    }
}

// -------------------------------------------------------------- qsl-analysis

void run_qsl_analysis(const ExperimentConfig& config, int threads, Emitter& emit,
                      std::vector<std::string>& errors, int& total_cells) {
    struct Cell {
        double t_f;
        double fidelity = 0.0;
        QslReport qsl;
        bool ok = false;
    };
    const auto tfs = tf_grid(config);
    std::vector<Cell> cells;
    for (double tf : tfs) {
        cells.push_back({tf, 0.0, {}, false});
    }
    total_cells = static_cast<int>(cells.size());
    errors.assign(cells.size(), "");

    const ExpansionSetup base = setup_from_config(config);
    const double gamma = config.gamma();
    for_each_index(cells.size(), threads, [&](std::size_t i) {
        try {
            auto& cell = cells[i];
            ExpansionSetup setup = base;
            setup.t_f = cell.t_f;
            TrainOptions options;
            options.max_iter = resolved_max_iter(config, 400);
            options.lr0 = config.lr0;
            options.stop_infidelity = 1e-4;
            options.use_shift = config.gradient == "shift";
            const MaxFidelityResult res = train_max_fidelity(setup, config.nt, options);
            cell.fidelity = res.fidelity;

            const SpatialGrid grid{config.n, config.half_width};
            ControlProtocol protocol;
            protocol.nt = config.nt;
            protocol.t_f = cell.t_f;
            protocol.u = res.opt.u;
            const auto traj = som_evolve_trajectory(gaussian_state(1.0, 0.0, grid), protocol);
            cell.qsl = qsl_time(traj, protocol.u, cell.t_f, gamma);
            cell.ok = true;
        } catch (const std::exception& e) {
            errors[i] = std::string("cell ") + std::to_string(i) + ": " + e.what();
        }
    });

    CsvTable table;
    table.header = {"t_f", "fidelity", "de_avg", "tau_arccos", "tau_sqrt"};
    for (const auto& cell : cells) {
        if (cell.ok) {
            table.add_row({cell.t_f, cell.fidelity, cell.qsl.de_avg, cell.qsl.tau_arccos,
                           cell.qsl.tau_sqrt});
        }
    }
    emit.table("qsl_analysis.csv", table);

    // Bang-bang reference at the optimal time.
    try {
        const auto bb = bangbang_protocol(gamma, config.d1, config.d2, config.nt);
        const SpatialGrid grid{config.n, config.half_width};
        const auto traj = som_evolve_trajectory(gaussian_state(1.0, 0.0, grid), bb);
        const QslReport qsl = qsl_time(traj, bb.u, bb.t_f, gamma);
        CsvTable bb_table;
        bb_table.header = {"t_f", "de_avg", "tau_arccos", "tau_sqrt"};
        bb_table.add_row({bb.t_f, qsl.de_avg, qsl.tau_arccos, qsl.tau_sqrt});
        emit.table("qsl_bangbang.csv", bb_table);
        emit.stat("bangbang_de_avg", qsl.de_avg);
    } catch (const Error& e) {
        errors.push_back(std::string("bangbang reference: ") + e.what());
    }
}

// --------------------------------------------------------------- barren-scan

void run_barren_scan(const ExperimentConfig& config, int threads, Emitter& emit,
                     std::vector<std::string>& errors, int& total_cells) {
    struct Cell {
        int n;
        double value = 0.0;
        bool ok = false;
    };
    std::vector<Cell> cells;
    for (int n = config.n_min; n <= config.n_max; ++n) {
        cells.push_back({n, 0.0, false});
    }
    total_cells = static_cast<int>(cells.size());
    errors.assign(cells.size(), "");

    for_each_index(cells.size(), threads, [&](std::size_t i) {
        try {
            auto& cell = cells[i];
            BarrenScanOptions options;
            options.n = cell.n;
            options.nt = 5 * cell.n;
            options.samples = config.scan_samples;
            options.seed = Rng::derive(config.master_seed(), cell.n);
            options.t_f = config.t_f;
            cell.value = avg_abs_gradient(options);
            cell.ok = true;
        } catch (const std::exception& e) {
            errors[i] = std::string("cell ") + std::to_string(i) + ": " + e.what();
        }
    });

    CsvTable table;
    table.header = {"n", "nt", "avg_abs_gradient"};
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (const auto& cell : cells) {
        if (!cell.ok) {
            continue;
        }
        table.add_row({static_cast<std::int64_t>(cell.n),
                       static_cast<std::int64_t>(5 * cell.n), cell.value});
        const double x = cell.n;
        const double y = std::log10(std::max(cell.value, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    emit.table("barren_scan.csv", table);
    if (m >= 2) {
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        emit.stat("log10_slope_per_qubit", slope);
    }
}

// --------------------------------------------------------------- noise-train

void run_noise_train(const ExperimentConfig& config, int threads, Emitter& emit,
                     std::vector<std::string>& errors, int& total_cells) {
    struct Cell {
        double beta;
        std::uint64_t seed;
        OptResult result;
        bool ok = false;
    };
    std::vector<Cell> cells;
    for (double beta : config.betas) {
        for (std::uint64_t seed : config.seeds) {
            cells.push_back({beta, seed, {}, false});
        }
    }
    total_cells = static_cast<int>(cells.size());
    errors.assign(cells.size(), "");

    const ExpansionSetup base = setup_from_config(config);
    const ControlProblem shared_problem = make_expansion_problem(base);
    const std::vector<GateOp> uncompute =
        target_uncompute_circuit(shared_problem.target, config.p, config.master_seed());
    for_each_index(cells.size(), threads, [&](std::size_t i) {
        try {
            auto& cell = cells[i];
            const ControlProblem& problem = shared_problem;
            const CostFn noisy =
                make_noisy_objective(problem, config.shots, cell.beta, cell.seed, uncompute);
            auto self = std::make_shared<const ControlProblem>(problem);
            const CostFn exact_f = [self](const std::vector<double>& u) {
                return self->fidelity_of(u);
            };
            SpsaOptions options;
            options.max_iter = resolved_max_iter(config, 1500);
            const auto ramp = linear_ramp(config.nt, config.t_f, problem.bounds);
            cell.result =
                spsa_minimize(noisy, ramp.u, problem.bounds, options, cell.seed, exact_f);
            cell.ok = true;
        } catch (const std::exception& e) {
            errors[i] = std::string("cell ") + std::to_string(i) + ": " + e.what();
        }
    });

    CsvTable curves;
    curves.header = {"beta", "seed", "iteration", "noisy_cost", "infidelity"};
    CsvTable plateaus;
    plateaus.header = {"beta", "seed", "plateau_infidelity"};
    for (const auto& cell : cells) {
        if (!cell.ok) {
            continue;
        }
        for (const auto& it : cell.result.record.iterations) {
            curves.add_row({cell.beta, static_cast<std::int64_t>(cell.seed),
                            static_cast<std::int64_t>(it.iteration), it.cost,
                            it.fidelity ? 1.0 - *it.fidelity : -1.0});
        }
        plateaus.add_row({cell.beta, static_cast<std::int64_t>(cell.seed),
                          plateau_infidelity(cell.result.record)});
    }
    emit.table("noise_train_curves.csv", curves);
    emit.table("noise_train_plateaus.csv", plateaus);
}

// --------------------------------------------------------- shift-coefficient

void run_shift_coefficient(const ExperimentConfig& config, int threads, Emitter& emit,
                           std::vector<std::string>& errors, int& total_cells) {
    struct Cell {
        int n;
        ShiftCoefficientStats stats;
        bool ok = false;
    };
    std::vector<Cell> cells;
    for (int n = config.n_min; n <= config.n_max; ++n) {
        cells.push_back({n, {}, false});
    }
    total_cells = static_cast<int>(cells.size());
    errors.assign(cells.size(), "");

    for_each_index(cells.size(), threads, [&](std::size_t i) {
        try {
            auto& cell = cells[i];
            BarrenScanOptions options;
            options.n = cell.n;
            options.nt = 5 * cell.n;
            options.samples = config.scan_samples;
            options.seed = Rng::derive(config.master_seed(), cell.n);
            options.t_f = config.t_f;
            cell.stats = shift_coefficient_scan(options);
            cell.ok = true;
        } catch (const std::exception& e) {
            errors[i] = std::string("cell ") + std::to_string(i) + ": " + e.what();
        }
    });

    CsvTable table;
    table.header = {"n", "nt", "c_mean_abs", "c_rel_std", "valid_samples"};
    for (const auto& cell : cells) {
        if (cell.ok) {
            table.add_row({static_cast<std::int64_t>(cell.n),
                           static_cast<std::int64_t>(5 * cell.n), cell.stats.mean_abs,
                           cell.stats.rel_std,
                           static_cast<std::int64_t>(cell.stats.valid_samples)});
        }
    }
    emit.table("shift_coefficient.csv", table);
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                          int threads) {
    config.validate();
    const auto t_start = std::chrono::steady_clock::now();

    std::filesystem::create_directories(out_dir);
    Emitter emit;
    emit.dir = out_dir;
    emit.manifest.experiment = config.experiment;
    emit.manifest.config_json = config.to_json();
    emit.manifest.seed = config.master_seed();
    emit.manifest.version = kVersion;

    std::vector<std::string> errors;
    int total_cells = 0;
    if (config.experiment == "prep-grid") {
        run_prep_grid(config, threads, emit, errors, total_cells);
    } else if (config.experiment == "cost-race") {
        run_cost_race(config, threads, emit, errors, total_cells);
    } else if (config.experiment == "trotter-grid") {
        run_trotter_grid(config, threads, emit, errors, total_cells);
    } else if (config.experiment == "phase-diagram") {
        run_phase_diagram(config, threads, emit, errors, total_cells);
    } else if (config.experiment == "qsl-analysis") {
        run_qsl_analysis(config, threads, emit, errors, total_cells);
    } else if (config.experiment == "barren-scan") {
        run_barren_scan(config, threads, emit, errors, total_cells);
    } else if (config.experiment == "noise-train") {
        run_noise_train(config, threads, emit, errors, total_cells);
    } else {
        run_shift_coefficient(config, threads, emit, errors, total_cells);
    }

    RunOutcome outcome;
    outcome.directory = out_dir;
    outcome.total_cells = total_cells;
    for (const auto& err : errors) {
        if (!err.empty()) {
            emit.manifest.cell_errors.push_back(err);
            ++outcome.failed_cells;
        }
    }
    emit.manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(emit.manifest, out_dir / "manifest.json");
    emit.manifest.outputs.push_back("manifest.json");
    outcome.files = emit.manifest.outputs;
    return outcome;
}

}  // namespace qdrive
