#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "qdrive/experiments.hpp"
#include "test_util.hpp"

using namespace qdrive;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file.good());
    return std::string(std::istreambuf_iterator<char>(file), {});
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qdrive_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("config defaults match the reference parameter set") {
    const ExperimentConfig cfg;
    CHECK(cfg.n == 6);
    CHECK(cfg.nt == 50);
    CHECK(cfg.omega_f == 0.1);
    CHECK(cfg.p == 4);
    CHECK(cfg.d1 == 1e-6);
    CHECK(cfg.d2 == 1.0);
    CHECK(cfg.t_f == 3.152);
    CHECK(cfg.gamma() == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("config parsing reports the offending field path") {
    CHECK_THROWS_WITH_AS(ExperimentConfig::from_json_text("{\"experiment\":\"bogus\"}"),
                         doctest::Contains("experiment"), ConfigError);
    CHECK_THROWS_WITH_AS(
        ExperimentConfig::from_json_text("{\"physics\":{\"n\":\"six\"}}"),
        doctest::Contains("physics.n"), ConfigError);
    CHECK_THROWS_WITH_AS(
        ExperimentConfig::from_json_text(
            "{\"experiment\":\"barren-scan\",\"physics\":{\"n\":99}}"),
        doctest::Contains("physics.n"), ConfigError);
    CHECK_THROWS_WITH_AS(
        ExperimentConfig::from_json_text(
            "{\"experiment\":\"noise-train\",\"sampling\":{\"beta\":1.5}}"),
        doctest::Contains("sampling.beta"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), ConfigError);
}

TEST_CASE("config round-trips through its JSON echo") {
    ExperimentConfig cfg;
    cfg.experiment = "barren-scan";
    cfg.n_min = 4;
    cfg.n_max = 6;
    cfg.scan_samples = 7;
    const auto parsed = ExperimentConfig::from_json_text(cfg.to_json());
    CHECK(parsed.experiment == cfg.experiment);
    CHECK(parsed.n_min == cfg.n_min);
    CHECK(parsed.n_max == cfg.n_max);
    CHECK(parsed.scan_samples == cfg.scan_samples);
}

TEST_CASE("empty tables still emit a header-only csv plus manifest") {
    const auto dir = fresh_dir("empty");
    CsvTable table;
    table.header = {"a", "b"};
    write_csv(table, dir / "empty.csv");
    CHECK(slurp(dir / "empty.csv") == "a,b\n");

    RunManifest manifest;
    manifest.experiment = "barren-scan";
    manifest.config_json = ExperimentConfig{}.to_json();
    manifest.version = "test";
    write_manifest(manifest, dir / "manifest.json");
    const auto text = slurp(dir / "manifest.json");
    CHECK(text.find("barren-scan") != std::string::npos);
}

TEST_CASE("csv doubles use '.' decimals and round-trip text") {
    CsvTable table;
    table.header = {"x"};
    table.add_row({0.1});
    table.add_row({-3.0});
    table.add_row({1e-6});
    CHECK(csv_to_string(table) == "x\n0.1\n-3\n1e-06\n");
}

TEST_CASE("a small barren scan is byte-identical across reruns and thread counts") {
    ExperimentConfig cfg;
    cfg.experiment = "barren-scan";
    cfg.n_min = 3;
    cfg.n_max = 5;
    cfg.scan_samples = 3;
    cfg.validate();

    const auto dir1 = fresh_dir("scan1");
    const auto dir2 = fresh_dir("scan2");
    const auto out1 = run_experiment(cfg, dir1, 1);
    const auto out2 = run_experiment(cfg, dir2, 3);
    CHECK(out1.ok());
    CHECK(out2.ok());
    CHECK(slurp(dir1 / "barren_scan.csv") == slurp(dir2 / "barren_scan.csv"));
}

TEST_CASE("a miniature noise-train run emits curves and plateaus") {
    ExperimentConfig cfg;
    cfg.experiment = "noise-train";
    cfg.n = 3;
    cfg.nt = 8;
    cfg.t_f = 3.152;
    cfg.betas = {0.0, 0.1};
    cfg.seeds = {1};
    cfg.shots = 256;
    cfg.max_iter = 30;
    cfg.validate();

    const auto dir = fresh_dir("noise");
    const auto out = run_experiment(cfg, dir, 1);
    CHECK(out.ok());
    CHECK(out.total_cells == 2);
    const auto curves = slurp(dir / "noise_train_curves.csv");
    CHECK(curves.find("beta,seed,iteration,noisy_cost,infidelity") == 0);
    const auto plateaus = slurp(dir / "noise_train_plateaus.csv");
    // one header + two cells
    CHECK(std::count(plateaus.begin(), plateaus.end(), '\n') == 3);
}

TEST_CASE("a miniature phase diagram emits wide protocol rows and stats") {
    ExperimentConfig cfg;
    cfg.experiment = "phase-diagram";
    cfg.n = 3;
    cfg.nt = 6;
    cfg.nt_values = {6};
    cfg.t_f_min = 2.6;
    cfg.t_f_max = 4.0;
    cfg.t_f_points = 3;
    cfg.max_iter = 60;
    cfg.validate();

    const auto dir = fresh_dir("phase");
    const auto out = run_experiment(cfg, dir, 1);
    CHECK(out.ok());
    const auto text = slurp(dir / "phase_protocols.csv");
    // header: t_f,fidelity,init,u0..u6 -> 3 + 7 columns
    const auto header = text.substr(0, text.find('\n'));
    CHECK(std::count(header.begin(), header.end(), ',') == 9);
    // 3 t_f rows + header
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    const auto manifest = slurp(dir / "manifest.json");
    CHECK(manifest.find("\"experiment\": \"phase-diagram\"") != std::string::npos);
}

TEST_CASE("miniature prep-grid, trotter-grid, qsl and shift-coefficient runs") {
    {
        ExperimentConfig cfg;
        cfg.experiment = "prep-grid";
        cfg.prep_n_min = 3;
        cfg.prep_n_max = 3;
        cfg.prep_p_min = 1;
        cfg.prep_p_max = 2;
        cfg.max_iter = 60;
        const auto out = run_experiment(cfg, fresh_dir("prep"), 1);
        CHECK(out.ok());
        CHECK(out.total_cells == 2);
        CHECK(slurp(out.directory / "prep_grid.csv").rfind("n,p,fidelity,iterations", 0) == 0);
    }
    {
        ExperimentConfig cfg;
        cfg.experiment = "trotter-grid";
        cfg.n = 3;
        cfg.nt_values = {6};
        cfg.slew_values = {1.0};
        cfg.max_iter = 40;
        const auto out = run_experiment(cfg, fresh_dir("trotter"), 1);
        CHECK(out.ok());
        const auto protocols = slurp(out.directory / "trotter_protocols.csv");
        CHECK(protocols.find("bangbang") != std::string::npos);
        CHECK(protocols.find("trained") != std::string::npos);
    }
    {
        ExperimentConfig cfg;
        cfg.experiment = "qsl-analysis";
        cfg.n = 3;
        cfg.nt = 6;
        cfg.t_f_points = 2;
        cfg.t_f_min = 3.0;
        cfg.t_f_max = 4.0;
        cfg.max_iter = 40;
        const auto out = run_experiment(cfg, fresh_dir("qsl"), 1);
        CHECK(out.ok());
        const auto table = slurp(out.directory / "qsl_analysis.csv");
        CHECK(table.rfind("t_f,fidelity,de_avg,tau_arccos,tau_sqrt", 0) == 0);
        CHECK(slurp(out.directory / "qsl_bangbang.csv").find("de_avg") != std::string::npos);
    }
    {
        ExperimentConfig cfg;
        cfg.experiment = "shift-coefficient";
        cfg.n_min = 3;
        cfg.n_max = 4;
        cfg.scan_samples = 5;
        const auto out = run_experiment(cfg, fresh_dir("shift"), 1);
        CHECK(out.ok());
        CHECK(slurp(out.directory / "shift_coefficient.csv")
                  .rfind("n,nt,c_mean_abs,c_rel_std,valid_samples", 0) == 0);
    }
}

TEST_CASE("infeasible cells are recorded without aborting the grid") {
    ExperimentConfig cfg;
    cfg.experiment = "trotter-grid";
    cfg.n = 3;
    cfg.nt_values = {6, 10};
    cfg.slew_values = {0.05, 1.0};  // 6 * 0.05 < |1 - 0.01|: two infeasible cells
    cfg.max_iter = 30;
    const auto out = run_experiment(cfg, fresh_dir("infeasible"), 1);
    CHECK_FALSE(out.ok());
    CHECK(out.total_cells == 4);
    CHECK(out.failed_cells == 2);
    const auto manifest = slurp(out.directory / "manifest.json");
    CHECK(manifest.find("pins farther apart") != std::string::npos);
    // completed cells still produced rows
    const auto grid = slurp(out.directory / "trotter_grid.csv");
    CHECK(std::count(grid.begin(), grid.end(), '\n') == 3);  // header + 2 cells
}

TEST_CASE("coarser Trotter/slew cells form a fidelity ladder") {
    struct Cell {
        int nt;
        double slew;
    };
    const Cell cells[] = {{10, 0.1}, {20, 0.2}, {50, 0.5}, {50, 1.0}};
    double previous = 0.0;
    for (const Cell& cell : cells) {
        ExpansionSetup setup;
        setup.slew = cell.slew;
        const ControlProblem problem = make_expansion_problem(setup);
        TrainOptions options;
        options.max_iter = 400;
        options.stop_infidelity = 1e-5;
        const auto ramp = linear_ramp(cell.nt, setup.t_f, problem.bounds);
        const auto res = train_protocol(problem, ramp.u, options);
        const double f = problem.fidelity_of(res.u);
        CHECK(f > previous);
        previous = f;
    }
    CHECK(previous >= 0.99);  // the (50, 1) cell
}

TEST_CASE("trained protocol at the optimal time is bang-bang shaped") {
    ExpansionSetup setup;  // t_f = 3.152, FS(1e-3)
    TrainOptions options;
    options.max_iter = 600;
    options.stop_infidelity = 2e-4;
    const auto res = train_max_fidelity(setup, 50, options);
    CHECK(res.fidelity >= 0.999);
    int polarized = 0;
    for (int k = 1; k < 50; ++k) {
        const double u = res.opt.u[k];
        if (std::abs(u - setup.d1) <= 0.05 || std::abs(u - setup.d2) <= 0.05) {
            ++polarized;
        }
    }
    CHECK(polarized >= static_cast<int>(0.8 * 49));
}

TEST_CASE("run_experiment honors the documented csv schema for cost-race") {
    ExperimentConfig cfg;
    cfg.experiment = "cost-race";
    cfg.n = 3;
    cfg.nt = 8;
    cfg.seeds = {1};
    cfg.delta_f_grid = {1e-3};
    cfg.max_iter = 25;
    cfg.validate();

    const auto dir = fresh_dir("race");
    const auto out = run_experiment(cfg, dir, 2);
    CHECK(out.ok());
    CHECK(out.total_cells == 3);  // IF, BA, FS(1e-3)
    const auto curves = slurp(dir / "cost_race_curves.csv");
    CHECK(curves.rfind("cost,delta_f,seed,iteration,cost_value,infidelity", 0) == 0);
    const auto summary = slurp(dir / "cost_race_summary.csv");
    CHECK(summary.rfind("cost,delta_f,seed,iterations_to_1e-3,final_fidelity", 0) == 0);
}
