#include "qdrive/emit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "qdrive/errors.hpp"

namespace qdrive {

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_value(const CsvValue& value) {
    if (std::holds_alternative<std::int64_t>(value)) {
        return std::to_string(std::get<std::int64_t>(value));
    }
    if (std::holds_alternative<double>(value)) {
        return format_double(std::get<double>(value));
    }
    return std::get<std::string>(value);
}

}  // namespace

void CsvTable::add_row(std::vector<CsvValue> row) {
    if (row.size() != header.size()) {
        throw Error("csv: row width does not match header");
    }
    rows.push_back(std::move(row));
}

std::string csv_to_string(const CsvTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += format_value(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw Error("cannot open for writing: " + path.string());
    }
    file << csv_to_string(table);
    if (!file) {
        throw Error("write failed: " + path.string());
    }
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["experiment"] = manifest.experiment;
    j["config"] = nlohmann::ordered_json::parse(manifest.config_json);
    j["seed"] = manifest.seed;
    j["version"] = manifest.version;
    j["wall_seconds"] = manifest.wall_seconds;
    j["outputs"] = manifest.outputs;
    j["cell_errors"] = manifest.cell_errors;
    nlohmann::ordered_json stats = nlohmann::ordered_json::object();
    for (const auto& [key, value] : manifest.stats) {
        stats[key] = value;
    }
    j["stats"] = stats;

    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw Error("cannot open for writing: " + path.string());
    }
    file << j.dump(2) << '\n';
}

}  // namespace qdrive
