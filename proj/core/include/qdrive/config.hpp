#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qdrive {

/**
 * Configuration of one experiment run. Defaults reproduce the reference
 * parameter set used throughout (n = 6, N_t = 50, omega_f = 0.1, p = 4,
 * delta1 = 1e-6, delta2 = 1, t_f = 3.152). Parsed from a JSON document with
 * blocks {"experiment", "physics", "optimizer", "sampling", "output"};
 * validation errors carry the offending field path.
 */
struct ExperimentConfig {
    std::string experiment = "phase-diagram";

    // physics block
    int n = 6;
    double half_width = 10.0;  // L
    double omega_f = 0.1;
    double d1 = 1e-6;
    double d2 = 1.0;
    double slew = 1.0;  // Delta_f
    int nt = 50;
    double t_f = 3.152;
    int p = 4;
    double t_f_min = 2.0;
    double t_f_max = 5.0;
    int t_f_points = 51;
    std::vector<int> nt_values = {10, 20, 30, 40, 50, 75, 100};
    std::vector<double> slew_values = {0.1, 0.2, 0.5, 1.0};
    int n_min = 4;
    int n_max = 8;
    int prep_n_min = 3;
    int prep_n_max = 8;
    int prep_p_min = 1;
    int prep_p_max = 6;

    // optimizer block
    std::string optimizer = "gd";  // "gd" | "spsa"
    std::string gradient = "shift";  // "shift" | "fd"
    std::string cost = "FS";  // "IF" | "BA" | "FS"
    double delta_f = 1e-3;
    std::vector<double> delta_f_grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
    double lr0 = 0.1;
    int max_iter = 0;  // 0 = per-experiment default
    double tol = 1e-12;
    double init_jitter = 0.05;  // seeded perturbation of the linear ramp

    // sampling block
    std::uint64_t shots = 8192;
    double beta = 0.0;
    std::vector<double> betas = {0.0, 0.02, 0.04, 0.06};
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    int scan_samples = 50;  // N_r for barren / shift-coefficient scans

    // output block
    std::string output_dir = "out";

    double gamma() const;
    std::uint64_t master_seed() const { return seeds.empty() ? 1 : seeds.front(); }

    void validate() const;  // throws ConfigError with a field path
    std::string to_json() const;

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::filesystem::path& path);
};

}  // namespace qdrive
