#pragma once

// Run configuration for mhqsim, loaded from YAML. See configs/experiment.yaml
// for a fully commented example.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "mhq/explore.hpp"
#include "mhq/model.hpp"
#include "mhq/schemes.hpp"

namespace mhq::app {

/// Bad or inconsistent configuration. `field` is the dotted key path and
/// `line` the 1-based line in the file, when known.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string &message, std::string field = {}, int line = 0);
    const std::string &detail() const { return detail_; }
    const std::string &field() const { return field_; }
    int line() const { return line_; }

  private:
    std::string detail_;
    std::string field_;
    int line_;
};

struct GridConfig {
    double start = 0.0;
    std::optional<double> end;  // us; defaults to `periods` * time_window
    double periods = 1.0;
    std::size_t points = 201;
};

struct RunConfig {
    FrequencyUnits units = FrequencyUnits::MHzTimes2Pi;
    DriveParams drive_input;  // as written, in `units`
    InitialStateSpec state;
    GridConfig grid;
    std::optional<std::uint64_t> shots;
    ReadoutModel readout = ReadoutModel::PerProjector;
    std::size_t bootstrap = 64;  // replicates for stderr when shots are set
    std::uint64_t seed = 1;
    std::size_t steps = 20000;  // stepped propagator steps for the startup check
    std::filesystem::path output = "out";
    SweepConfig sweep;

    DriveParams drive() const;  // rad/us
    /// Resolved grid end in us.
    double grid_end() const;
    /// Throws ConfigError.
    void validate() const;
};

/// Built-in configuration: the experimental drive and initial state.
RunConfig default_config();

/// Parses YAML text; unknown keys are rejected. Throws ConfigError.
RunConfig parse_config(const std::string &yaml_text);
RunConfig load_config(const std::filesystem::path &path);

std::string_view readout_name(ReadoutModel model);

}  // namespace mhq::app
