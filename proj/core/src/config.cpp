#include "qdrive/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qdrive/errors.hpp"

namespace qdrive {

namespace {

using nlohmann::json;

const std::set<std::string> kExperiments = {
    "prep-grid",   "cost-race",   "trotter-grid",      "phase-diagram",
    "qsl-analysis", "barren-scan", "noise-train",       "shift-coefficient"};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

template <typename T>
void read(const json& block, const std::string& block_name, const char* key, T& out) {
    if (!block.contains(key)) {
        return;
    }
    try {
        out = block.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(block_name + "." + key, std::string("bad type (") + e.what() + ")");
    }
}

}  // namespace

double ExperimentConfig::gamma() const {
    return std::sqrt(1.0 / omega_f);
}

void ExperimentConfig::validate() const {
    if (!kExperiments.count(experiment)) {
        fail("experiment", "unknown tag '" + experiment + "'");
    }
    if (n < 1 || n > 14) {
        fail("physics.n", "must be in [1, 14]");
    }
    if (!(half_width > 0.0)) {
        fail("physics.L", "must be positive");
    }
    if (!(omega_f > 0.0) || omega_f > 1.0) {
        fail("physics.omega_f", "must be in (0, 1]");
    }
    if (!(d1 > 0.0) || !(d1 <= d2)) {
        fail("physics.delta1", "requires 0 < delta1 <= delta2");
    }
    if (slew <= 0.0) {
        fail("physics.slew", "must be positive");
    }
    if (nt < 1) {
        fail("physics.nt", "must be >= 1");
    }
    if (!(t_f > 0.0)) {
        fail("physics.t_f", "must be positive");
    }
    if (p < 0) {
        fail("physics.p", "must be >= 0");
    }
    if (!(t_f_min > 0.0) || !(t_f_max > t_f_min) || t_f_points < 2) {
        fail("physics.t_f_range", "requires 0 < min < max and >= 2 points");
    }
    for (int v : nt_values) {
        if (v < 1) {
            fail("physics.nt_values", "entries must be >= 1");
        }
    }
    for (double v : slew_values) {
        if (v <= 0.0) {
            fail("physics.slew_values", "entries must be positive");
        }
    }
    if (n_min < 2 || n_max > 14 || n_min > n_max) {
        fail("physics.n_range", "requires 2 <= min <= max <= 14");
    }
    if (prep_n_min < 1 || prep_n_max > 14 || prep_n_min > prep_n_max || prep_p_min < 1 ||
        prep_p_min > prep_p_max) {
        fail("physics.prep_grid", "bad n/p ranges");
    }
    if (optimizer != "gd" && optimizer != "spsa") {
        fail("optimizer.kind", "must be 'gd' or 'spsa'");
    }
    if (gradient != "shift" && gradient != "fd") {
        fail("optimizer.gradient", "must be 'shift' or 'fd'");
    }
    if (cost != "IF" && cost != "BA" && cost != "FS") {
        fail("optimizer.cost", "must be one of IF, BA, FS");
    }
    if (!(delta_f > 0.0)) {
        fail("optimizer.delta_f", "must be positive");
    }
    for (double v : delta_f_grid) {
        if (!(v > 0.0)) {
            fail("optimizer.delta_f_grid", "entries must be positive");
        }
    }
    if (!(lr0 > 0.0)) {
        fail("optimizer.lr0", "must be positive");
    }
    if (max_iter < 0) {
        fail("optimizer.max_iter", "must be >= 0");
    }
    if (init_jitter < 0.0) {
        fail("optimizer.init_jitter", "must be >= 0");
    }
    if (shots < 1) {
        fail("sampling.shots", "must be >= 1");
    }
    if (beta < 0.0 || beta > 1.0) {
        fail("sampling.beta", "must be in [0, 1]");
    }
    for (double b : betas) {
        if (b < 0.0 || b > 1.0) {
            fail("sampling.betas", "entries must be in [0, 1]");
        }
    }
    if (seeds.empty()) {
        fail("sampling.seeds", "need at least one seed");
    }
    if (scan_samples < 1) {
        fail("sampling.scan_samples", "must be >= 1");
    }
    if (output_dir.empty()) {
        fail("output", "must not be empty");
    }
}

std::string ExperimentConfig::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    auto& phys = j["physics"];
    phys["n"] = n;
    phys["L"] = half_width;
    phys["omega_f"] = omega_f;
    phys["delta1"] = d1;
    phys["delta2"] = d2;
    phys["slew"] = slew;
    phys["nt"] = nt;
    phys["t_f"] = t_f;
    phys["p"] = p;
    phys["t_f_range"] = {t_f_min, t_f_max};
    phys["t_f_points"] = t_f_points;
    phys["nt_values"] = nt_values;
    phys["slew_values"] = slew_values;
    phys["n_range"] = {n_min, n_max};
    phys["prep_n_range"] = {prep_n_min, prep_n_max};
    phys["prep_p_range"] = {prep_p_min, prep_p_max};
    auto& opt = j["optimizer"];
    opt["kind"] = optimizer;
    opt["gradient"] = gradient;
    opt["cost"] = cost;
    opt["delta_f"] = delta_f;
    opt["delta_f_grid"] = delta_f_grid;
    opt["lr0"] = lr0;
    opt["max_iter"] = max_iter;
    opt["tol"] = tol;
    opt["init_jitter"] = init_jitter;
    auto& samp = j["sampling"];
    samp["shots"] = shots;
    samp["beta"] = beta;
    samp["betas"] = betas;
    samp["seeds"] = seeds;
    samp["scan_samples"] = scan_samples;
    j["output"] = output_dir;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) {
        fail("config", "top level must be an object");
    }

    ExperimentConfig cfg;
    read(j, "config", "experiment", cfg.experiment);
    const json empty = json::object();
    const json& phys = j.contains("physics") ? j.at("physics") : empty;
    if (!phys.is_object()) {
        fail("physics", "must be an object");
    }
    read(phys, "physics", "n", cfg.n);
    read(phys, "physics", "L", cfg.half_width);
    read(phys, "physics", "omega_f", cfg.omega_f);
    read(phys, "physics", "delta1", cfg.d1);
    read(phys, "physics", "delta2", cfg.d2);
    read(phys, "physics", "slew", cfg.slew);
    read(phys, "physics", "nt", cfg.nt);
    read(phys, "physics", "t_f", cfg.t_f);
    read(phys, "physics", "p", cfg.p);
    read(phys, "physics", "t_f_points", cfg.t_f_points);
    read(phys, "physics", "nt_values", cfg.nt_values);
    read(phys, "physics", "slew_values", cfg.slew_values);
    if (phys.contains("t_f_range")) {
        std::vector<double> range;
        read(phys, "physics", "t_f_range", range);
        if (range.size() != 2) {
            fail("physics.t_f_range", "expected [min, max]");
        }
        cfg.t_f_min = range[0];
        cfg.t_f_max = range[1];
    }
    if (phys.contains("n_range")) {
        std::vector<int> range;
        read(phys, "physics", "n_range", range);
        if (range.size() != 2) {
            fail("physics.n_range", "expected [min, max]");
        }
        cfg.n_min = range[0];
        cfg.n_max = range[1];
    }
    if (phys.contains("prep_n_range")) {
        std::vector<int> range;
        read(phys, "physics", "prep_n_range", range);
        if (range.size() != 2) {
            fail("physics.prep_n_range", "expected [min, max]");
        }
        cfg.prep_n_min = range[0];
        cfg.prep_n_max = range[1];
    }
    if (phys.contains("prep_p_range")) {
        std::vector<int> range;
        read(phys, "physics", "prep_p_range", range);
        if (range.size() != 2) {
            fail("physics.prep_p_range", "expected [min, max]");
        }
        cfg.prep_p_min = range[0];
        cfg.prep_p_max = range[1];
    }

    const json& opt = j.contains("optimizer") ? j.at("optimizer") : empty;
    if (!opt.is_object()) {
        fail("optimizer", "must be an object");
    }
    read(opt, "optimizer", "kind", cfg.optimizer);
    read(opt, "optimizer", "gradient", cfg.gradient);
    read(opt, "optimizer", "cost", cfg.cost);
    read(opt, "optimizer", "delta_f", cfg.delta_f);
    read(opt, "optimizer", "delta_f_grid", cfg.delta_f_grid);
    read(opt, "optimizer", "lr0", cfg.lr0);
    read(opt, "optimizer", "max_iter", cfg.max_iter);
    read(opt, "optimizer", "tol", cfg.tol);
    read(opt, "optimizer", "init_jitter", cfg.init_jitter);

    const json& samp = j.contains("sampling") ? j.at("sampling") : empty;
    if (!samp.is_object()) {
        fail("sampling", "must be an object");
    }
    read(samp, "sampling", "shots", cfg.shots);
    read(samp, "sampling", "beta", cfg.beta);
    read(samp, "sampling", "betas", cfg.betas);
    read(samp, "sampling", "seeds", cfg.seeds);
    read(samp, "sampling", "scan_samples", cfg.scan_samples);

    read(j, "config", "output", cfg.output_dir);
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw ConfigError("config: cannot read " + path.string());
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    return from_json_text(buffer.str());
}

}  // namespace qdrive
