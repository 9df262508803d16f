#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "mhq/app/config.hpp"
#include "mhq/app/output.hpp"
#include "mhq/explore.hpp"
#include "mhq/propagate.hpp"

namespace mhq::app {

enum class Figure { Fig2, Fig3, Fig4 };

std::string_view figure_name(Figure f);

/// The closed-form propagator did not match the stepped product at startup.
class StartupCheckFailed : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FigureBundle {
    Figure target = Figure::Fig2;
    std::vector<SeriesRow> rows;
    std::vector<SeriesRow> tomography;  // fig2 only: initial state in the H(0) basis
    nlohmann::ordered_json metadata;
};

/// Closed form vs stepped product over (0, grid end] with cfg.steps steps.
ClosedFormCheck startup_check(const RunConfig &cfg);

/// Computes every series of one figure on the configured grid. Grid points
/// run in parallel; rows come out in grid order. Throws StartupCheckFailed.
FigureBundle reproduce(Figure target, const RunConfig &cfg, unsigned threads);

/// Writes <name>.csv, <name>.json and, for fig2, fig2_tomography.csv.
void write_bundle(const FigureBundle &bundle, const std::filesystem::path &dir);

SweepResult run_sweep(const RunConfig &cfg, unsigned threads);

/// sweep.csv: a "# " JSON metadata line, a header and one row per point;
/// sweep_summary.json: the summary statistics.
void write_sweep(const SweepResult &result, const std::filesystem::path &dir);

nlohmann::ordered_json config_json(const RunConfig &cfg);
nlohmann::ordered_json summary_json(const SweepSummary &s);

}  // namespace mhq::app
