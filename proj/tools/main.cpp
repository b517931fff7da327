#include <cstdint>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "criteria.hpp"
#include "qdrive/experiments.hpp"
#include "qdrive/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qdrive - digital quantum simulation and variational control of "
                 "trapped-particle expansion"};
    app.set_version_flag("--version", std::string(qdrive::kVersion));
    app.require_subcommand(1);

    // ---- run ----
    std::string config_path;
    std::string out_dir;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    std::uint64_t seed_override = 0;
    bool seed_given = false;

    auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
    run->add_option("--config", config_path, "Path to the experiment config (JSON)")
        ->required();
    run->add_option("--out", out_dir, "Output directory (default: config's output field)");
    run->add_option("--threads", threads, "Worker threads for grid cells");
    run->add_option("--seed", seed_override, "Replace the config's seed list with this seed")
        ->each([&seed_given](const std::string&) { seed_given = true; });

    // ---- verify ----
    std::vector<int> criteria_ids;
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("--criterion", criteria_ids,
                       "Criterion ids to run (default: all 13)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto config = qdrive::ExperimentConfig::from_json_file(config_path);
            if (seed_given) {
                config.seeds = {seed_override};
            }
            const std::string dir = out_dir.empty() ? config.output_dir : out_dir;
            if (threads < 1) {
                threads = 1;
            }
            const auto outcome = qdrive::run_experiment(config, dir, threads);
            std::cout << config.experiment << ": " << outcome.total_cells - outcome.failed_cells
                      << "/" << outcome.total_cells << " cells completed; wrote "
                      << outcome.files.size() << " files to " << outcome.directory.string()
                      << "\n";
            if (!outcome.ok()) {
                std::cerr << outcome.failed_cells
                          << " cell(s) failed; see manifest.json for details\n";
                return 1;
            }
            return 0;
        }
        return qdrive::acceptance::run_and_report(criteria_ids, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
