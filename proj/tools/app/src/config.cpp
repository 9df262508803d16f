#include "mhq/app/config.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "mhq/errors.hpp"

namespace mhq::app {

ConfigError::ConfigError(const std::string &message, std::string field, int line)
    : std::runtime_error([&] {
          std::string where;
          if (line > 0) where += fmt::format("line {}: ", line);
          if (!field.empty()) where += fmt::format("{}: ", field);
          return "config error: " + where + message;
      }()),
      detail_(message),
      field_(std::move(field)),
      line_(line) {}

namespace {

int line_of(const YAML::Node &node) { return node.Mark().is_null() ? 0 : node.Mark().line + 1; }

std::string join(const std::string &prefix, const std::string &key) { return prefix.empty() ? key : prefix + "." + key; }

void require_map(const YAML::Node &node, const std::string &field, std::initializer_list<const char *> allowed) {
    if (!node.IsMap()) throw ConfigError("expected a mapping", field, line_of(node));
    for (const auto &kv : node) {
        const std::string key = kv.first.as<std::string>();
        bool known = false;
        for (const char *a : allowed) known = known || key == a;
        if (!known) throw ConfigError("unknown key", join(field, key), line_of(kv.first));
    }
}

template <class T>
T scalar(const YAML::Node &node, const std::string &field) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception &) {
        throw ConfigError("cannot convert value", field, line_of(node));
    }
}

double finite_number(const YAML::Node &node, const std::string &field) {
    const double v = scalar<double>(node, field);
    if (!std::isfinite(v)) throw ConfigError("value must be finite", field, line_of(node));
    return v;
}

std::uint64_t count(const YAML::Node &node, const std::string &field) {
    const long long v = scalar<long long>(node, field);
    if (v < 0) throw ConfigError("value must be non-negative", field, line_of(node));
    return static_cast<std::uint64_t>(v);
}

Real3 triple(const YAML::Node &node, const std::string &field) {
    if (!node.IsSequence() || node.size() != 3)
        throw ConfigError("expected a list of three numbers [+, 0, -]", field, line_of(node));
    Real3 out{};
    for (std::size_t k = 0; k < 3; ++k) out[k] = finite_number(node[k], fmt::format("{}[{}]", field, k));
    return out;
}

FrequencyUnits parse_units(const YAML::Node &node, const std::string &field) {
    const auto name = scalar<std::string>(node, field);
    for (auto u : {FrequencyUnits::AngularRadPerUs, FrequencyUnits::MHzTimes2Pi, FrequencyUnits::MHzPlain})
        if (name == units_name(u)) return u;
    throw ConfigError("expected one of angular_rad_per_us, MHz_times_2pi, MHz_plain", field, line_of(node));
}

void parse_drive(const YAML::Node &node, RunConfig &cfg) {
    require_map(node, "drive", {"units", "omega1", "omega2", "phi1", "phi2", "phi1_ratio", "phi2_ratio"});
    if (node["units"]) cfg.units = parse_units(node["units"], "drive.units");
    DriveParams &d = cfg.drive_input;
    if (node["omega1"]) d.omega1 = finite_number(node["omega1"], "drive.omega1");
    if (node["omega2"]) d.omega2 = finite_number(node["omega2"], "drive.omega2");
    auto phase = [&](const char *abs_key, const char *ratio_key, double omega, double &out) {
        const std::string abs_field = std::string("drive.") + abs_key;
        if (node[abs_key] && node[ratio_key])
            throw ConfigError(fmt::format("give either {} or {}, not both", abs_key, ratio_key), abs_field,
                              line_of(node[abs_key]));
        if (node[abs_key]) out = finite_number(node[abs_key], abs_field);
        if (node[ratio_key]) out = omega * finite_number(node[ratio_key], std::string("drive.") + ratio_key);
    };
    phase("phi1", "phi1_ratio", d.omega1, d.phi1);
    phase("phi2", "phi2_ratio", d.omega2, d.phi2);
}

void parse_sweep(const YAML::Node &node, SweepConfig &s) {
    require_map(node, "sweep", {"n_sets", "n_time", "omega_min", "omega_max", "phi_span", "units"});
    if (node["n_sets"]) s.n_sets = count(node["n_sets"], "sweep.n_sets");
    if (node["n_time"]) s.n_time = count(node["n_time"], "sweep.n_time");
    if (node["omega_min"]) s.omega_min = finite_number(node["omega_min"], "sweep.omega_min");
    if (node["omega_max"]) s.omega_max = finite_number(node["omega_max"], "sweep.omega_max");
    if (node["phi_span"]) s.phi_span = finite_number(node["phi_span"], "sweep.phi_span");
    if (node["units"]) s.units = parse_units(node["units"], "sweep.units");
    try {
        s.validate();
    } catch (const InvalidParams &e) {
        throw ConfigError(e.what(), "sweep", line_of(node));
    }
}

}  // namespace

std::string_view readout_name(ReadoutModel model) {
    return model == ReadoutModel::Multinomial ? "multinomial" : "per_projector";
}

DriveParams RunConfig::drive() const {
    return {to_angular(drive_input.omega1, units), to_angular(drive_input.omega2, units),
            to_angular(drive_input.phi1, units), to_angular(drive_input.phi2, units)};
}

double RunConfig::grid_end() const { return grid.end ? *grid.end : grid.periods * time_window(drive()); }

void RunConfig::validate() const {
    try {
        drive().validate();
    } catch (const InvalidParams &e) {
        throw ConfigError(e.what(), "drive");
    }
    try {
        state.validate();
    } catch (const InvalidSpec &e) {
        throw ConfigError(e.what(), "state");
    }
    if (grid.start < -1e-12) throw ConfigError("must be >= 0", "grid.start");
    if (!(grid_end() > grid.start)) throw ConfigError("grid end must exceed grid start", "grid.end");
    if (!(grid.periods > 0.0)) throw ConfigError("must be positive", "grid.periods");
    if (grid.points < 2) throw ConfigError("need at least two points", "grid.points");
    if (shots && *shots == 0) throw ConfigError("must be positive", "shots");
    if (bootstrap < 2) throw ConfigError("need at least two replicates", "bootstrap");
    if (steps == 0) throw ConfigError("must be positive", "steps");
    try {
        sweep.validate();
    } catch (const InvalidParams &e) {
        throw ConfigError(e.what(), "sweep");
    }
}

RunConfig default_config() {
    RunConfig cfg;
    cfg.units = FrequencyUnits::MHzTimes2Pi;
    cfg.drive_input = DriveParams::equal(2.219, 1.09 * 2.219);
    cfg.state = experimental_state();
    return cfg;
}

RunConfig parse_config(const std::string &yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::ParserException &e) {
        throw ConfigError(e.msg, {}, e.mark.line + 1);
    }
    RunConfig cfg = default_config();
    if (root.IsNull()) return cfg;
    require_map(root, "", {"drive", "state", "grid", "shots", "readout", "bootstrap", "seed", "steps", "output",
                           "sweep"});

    if (root["drive"]) parse_drive(root["drive"], cfg);
    if (const auto s = root["state"]) {
        require_map(s, "state", {"p", "a"});
        if (s["p"]) cfg.state.p = triple(s["p"], "state.p");
        if (s["a"]) cfg.state.a = triple(s["a"], "state.a");
    }
    if (const auto g = root["grid"]) {
        require_map(g, "grid", {"start", "end", "periods", "points"});
        if (g["start"]) cfg.grid.start = finite_number(g["start"], "grid.start");
        if (g["end"] && !g["end"].IsNull()) cfg.grid.end = finite_number(g["end"], "grid.end");
        if (g["periods"]) cfg.grid.periods = finite_number(g["periods"], "grid.periods");
        if (g["points"]) cfg.grid.points = count(g["points"], "grid.points");
    }
    if (const auto n = root["shots"]; n && !n.IsNull()) {
        const std::uint64_t shots = count(n, "shots");
        if (shots > 0) cfg.shots = shots;
    }
    if (const auto r = root["readout"]) {
        const auto name = scalar<std::string>(r, "readout");
        if (name == "multinomial")
            cfg.readout = ReadoutModel::Multinomial;
        else if (name == "per_projector")
            cfg.readout = ReadoutModel::PerProjector;
        else
            throw ConfigError("expected multinomial or per_projector", "readout", line_of(r));
    }
    if (root["bootstrap"]) cfg.bootstrap = count(root["bootstrap"], "bootstrap");
    if (root["seed"]) cfg.seed = count(root["seed"], "seed");
    if (root["steps"]) cfg.steps = count(root["steps"], "steps");
    if (root["output"]) cfg.output = scalar<std::string>(root["output"], "output");
    if (root["sweep"]) parse_sweep(root["sweep"], cfg.sweep);

    // report range errors against the offending line where we can
    try {
        cfg.validate();
    } catch (const ConfigError &e) {
        if (e.line() > 0) throw;
        YAML::Node at = root;
        std::string head = e.field();
        const auto dot = head.find('.');
        if (root[head.substr(0, dot)]) {
            at = root[head.substr(0, dot)];
            if (dot != std::string::npos && at.IsMap() && at[head.substr(dot + 1)]) at = at[head.substr(dot + 1)];
        }
        throw ConfigError(e.detail(), e.field(), line_of(at));
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open {}", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace mhq::app
