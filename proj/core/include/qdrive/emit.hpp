#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace qdrive {

using CsvValue = std::variant<std::int64_t, double, std::string>;

/// Plain table destined for a CSV file; header is mandatory.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvValue>> rows;

    void add_row(std::vector<CsvValue> row);
};

/// Canonical text form: comma delimiter, '.' decimal, shortest round-trip
/// doubles, "\n" line endings. Byte-stable for identical tables.
std::string csv_to_string(const CsvTable& table);

void write_csv(const CsvTable& table, const std::filesystem::path& path);

/// Reproducibility record emitted next to every experiment's data files.
struct RunManifest {
    std::string experiment;
    std::string config_json;  // echo of the effective configuration
    std::uint64_t seed = 0;
    std::string version;
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;
    std::vector<std::string> cell_errors;
    std::vector<std::pair<std::string, double>> stats;  // derived scalars
};

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

}  // namespace qdrive
