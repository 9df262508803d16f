#pragma once

// Tidy CSV series (t_us, series, value, stderr) and JSON metadata files.
// Numbers are written with 17 significant digits so reruns are byte-identical.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace mhq::app {

struct SeriesRow {
    double t_us = 0.0;
    std::string series;
    double value = 0.0;
    std::optional<double> error;  // standard error, only for shot-noise runs
};

std::string format_number(double v);

/// Writes header plus rows; throws std::runtime_error if the file cannot be written.
void write_series_csv(const std::filesystem::path &path, const std::vector<SeriesRow> &rows);

/// Pretty-printed JSON with a trailing newline.
void write_json(const std::filesystem::path &path, const nlohmann::ordered_json &doc);

/// Creates `dir` (and parents) if needed.
void ensure_directory(const std::filesystem::path &dir);

}  // namespace mhq::app
