#include "mhq/app/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>

#include "mhq/analysis.hpp"
#include "mhq/parallel.hpp"
#include "mhq/random.hpp"
#include "mhq/schemes.hpp"
#include "mhq/tolerances.hpp"

#ifndef MHQ_VERSION
#define MHQ_VERSION "unknown"
#endif

namespace mhq::app {

namespace {

using json = nlohmann::ordered_json;

struct Value {
    std::string name;
    double value = 0.0;
    bool measured = true;  // false for reference lines and exact-theory series
};

std::string label(std::size_t k) { return std::string(kLabelNames[k]); }

std::vector<Value> figure_values(Figure target, const ConditionalProbabilities &c, double aleph_kdq,
                                 double omega_eff) {
    std::vector<Value> out;
    const SchemeTables tables = compose_tables(c);
    const MhqTable z = mhq_reconstruct(tables);
    switch (target) {
    case Figure::Fig2:
        for (std::size_t f = 0; f < kDim; ++f) out.push_back({fmt::format("p_end[{}]", label(f)), c.p_end[f]});
        for (std::size_t i = 0; i < kDim; ++i)
            for (std::size_t f = 0; f < kDim; ++f)
                out.push_back({fmt::format("p_given[{}][{}]", label(i), label(f)), c.given_i[i][f]});
        for (std::size_t i = 0; i < kDim; ++i)
            for (std::size_t f = 0; f < kDim; ++f)
                out.push_back({fmt::format("p_given_not[{}][{}]", label(i), label(f)), c.given_not_i[i][f]});
        break;
    case Figure::Fig3:
        for (std::size_t i = 0; i < kDim; ++i)
            for (std::size_t f = 0; f < kDim; ++f)
                out.push_back({fmt::format("z[{}][{}]", label(i), label(f)), z.z[i][f]});
        for (std::size_t i = 0; i < kDim; ++i) {
            double acc = 0.0;
            for (double x : z.z[i]) acc += std::abs(x);
            out.push_back({fmt::format("sum_abs_z[{}]", label(i)), acc});
        }
        out.push_back({"aleph", negativity(z)});
        out.push_back({"s", s_stat(z.z)});
        out.push_back({"aleph_kdq", aleph_kdq, false});
        out.push_back({"aleph_bound", kNegativityBound, false});
        out.push_back({"classical_limit", 0.0, false});
        break;
    case Figure::Fig4: {
        const double w = avg_work_mhq(z);
        const double w_tpm = avg_work_tpm(tables);
        out.push_back({"W_mhq", w});
        out.push_back({"W_tpm", w_tpm});
        out.push_back({"W_mhq_over_omega", w / omega_eff});
        out.push_back({"W_tpm_over_omega", w_tpm / omega_eff});
        out.push_back({"aleph", negativity(z)});
        break;
    }
    }
    return out;
}

std::vector<double> grid_times(const RunConfig &cfg) {
    const double a = cfg.grid.start, b = cfg.grid_end();
    const std::size_t n = cfg.grid.points;
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
    return t;
}

json check_json(const ClosedFormCheck &c, std::size_t steps) {
    return json{{"steps", steps},
                {"times_us", c.times},
                {"frobenius_deviation", c.deviation},
                {"tolerance", c.tolerance},
                {"ok", c.ok}};
}

std::map<std::string, std::vector<double>> by_series(const std::vector<SeriesRow> &rows) {
    std::map<std::string, std::vector<double>> out;
    for (const auto &r : rows) out[r.series].push_back(r.value);
    return out;
}

json figure_summary(Figure target, const std::vector<SeriesRow> &rows, const std::vector<double> &t) {
    const auto s = by_series(rows);
    json out;
    auto argmax = [](const std::vector<double> &v) {
        return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    };
    if (target == Figure::Fig3) {
        const auto &aleph = s.at("aleph");
        const std::size_t k = argmax(aleph);
        std::size_t above = 0;
        for (double a : aleph) above += a > 1e-3 ? 1 : 0;
        out["aleph_peak"] = {{"value", aleph[k]}, {"t_us", t[k]}, {"grid_index", k}};
        out["fraction_aleph_above_1e-3"] = static_cast<double>(above) / static_cast<double>(aleph.size());
        json cells = json::object();
        for (std::size_t i = 0; i < kDim; ++i)
            for (std::size_t f = 0; f < kDim; ++f) {
                const auto &z = s.at(fmt::format("z[{}][{}]", label(i), label(f)));
                const std::size_t m = static_cast<std::size_t>(std::min_element(z.begin(), z.end()) - z.begin());
                cells[fmt::format("{}{}", label(i), label(f))] = {{"min", z[m]}, {"t_us", t[m]}};
            }
        out["cell_minima"] = cells;
    } else if (target == Figure::Fig4) {
        const auto &w = s.at("W_mhq");
        const auto &w_tpm = s.at("W_tpm");
        const ExtractionPeak e = extraction_peak(w, w_tpm);
        const std::size_t k = argmax(s.at("aleph"));
        out["min_W_mhq"] = {{"value", e.min_w}, {"t_us", t[e.index_w]}, {"grid_index", e.index_w}};
        out["min_W_tpm"] = {{"value", e.min_w_tpm}, {"t_us", t[e.index_w_tpm]}, {"grid_index", e.index_w_tpm}};
        out["aleph_peak"] = {{"t_us", t[k]}, {"grid_index", k}};
        out["extraction_ratio"] = e.ratio ? json(*e.ratio) : json(nullptr);
    } else {
        const auto &p = s.at("p_end[+]");
        out["points"] = p.size();
    }
    return out;
}

}  // namespace

std::string_view figure_name(Figure f) {
    switch (f) {
    case Figure::Fig2:
        return "fig2";
    case Figure::Fig3:
        return "fig3";
    case Figure::Fig4:
        return "fig4";
    }
    return "fig";
}

json config_json(const RunConfig &cfg) {
    const DriveParams d = cfg.drive();
    json out;
    out["drive"] = {{"units", units_name(cfg.units)},
                    {"omega1", cfg.drive_input.omega1},
                    {"omega2", cfg.drive_input.omega2},
                    {"phi1", cfg.drive_input.phi1},
                    {"phi2", cfg.drive_input.phi2},
                    {"angular_rad_per_us", {d.omega1, d.omega2, d.phi1, d.phi2}}};
    out["state"] = {{"p", cfg.state.p}, {"a_cycles", cfg.state.a}, {"populations", cfg.state.populations()}};
    out["grid"] = {{"start_us", cfg.grid.start}, {"end_us", cfg.grid_end()}, {"points", cfg.grid.points}};
    out["shots"] = cfg.shots ? json(*cfg.shots) : json(nullptr);
    out["readout"] = readout_name(cfg.readout);
    out["bootstrap"] = cfg.bootstrap;
    out["seed"] = cfg.seed;
    out["steps"] = cfg.steps;
    return out;
}

ClosedFormCheck startup_check(const RunConfig &cfg) {
    return validate_closed_form(cfg.drive(), cfg.grid_end(), cfg.steps, cfg.seed, tol::closed_form_startup);
}

FigureBundle reproduce(Figure target, const RunConfig &cfg, unsigned threads) {
    cfg.validate();
    const ClosedFormCheck check = startup_check(cfg);
    if (!check.ok)
        throw StartupCheckFailed(fmt::format("closed-form propagator deviates from the stepped product by {:.3g} "
                                             "(tolerance {:.3g}); raise --steps",
                                             *std::max_element(check.deviation.begin(), check.deviation.end()),
                                             check.tolerance));

    const DriveParams params = cfg.drive();
    const ClosedFormPropagator propagator(params);
    const EnergyBasis basis0 = energy_basis(0.0, params);
    const StateVector psi = initial_state_vector(cfg.state, basis0);
    const Operator rho = outer(psi, psi);
    const double omega_eff = params.effective_omega();
    const std::vector<double> times = grid_times(cfg);

    struct PointResult {
        std::vector<Value> values;
        std::vector<std::optional<double>> errors;
    };
    std::vector<PointResult> points(times.size());

    parallel_for(
        times.size(),
        [&](std::size_t k) {
            const TimeSlice slice = make_slice(times[k], propagator);
            const ConditionalProbabilities exact = measure_conditionals(psi, slice, basis0);
            const double aleph_kdq = negativity(kdq_direct(rho, slice, basis0));
            PointResult &out = points[k];
            if (!cfg.shots) {
                out.values = figure_values(target, exact, aleph_kdq, omega_eff);
                out.errors.assign(out.values.size(), std::nullopt);
                return;
            }
            const std::uint64_t seed_k = substream_seed(cfg.seed, k);
            const ConditionalProbabilities estimate =
                sample_conditionals(exact, *cfg.shots, substream_seed(seed_k, 0), cfg.readout);
            out.values = figure_values(target, estimate, aleph_kdq, omega_eff);

            // parametric bootstrap around the estimate
            std::vector<double> sum(out.values.size()), sum2(out.values.size());
            for (std::size_t b = 0; b < cfg.bootstrap; ++b) {
                const auto replica = figure_values(
                    target, sample_conditionals(estimate, *cfg.shots, substream_seed(seed_k, 1 + b), cfg.readout),
                    aleph_kdq, omega_eff);
                for (std::size_t j = 0; j < replica.size(); ++j) {
                    const double d = replica[j].value - out.values[j].value;
                    sum[j] += d;
                    sum2[j] += d * d;
                }
            }
            const double n = static_cast<double>(cfg.bootstrap);
            for (std::size_t j = 0; j < out.values.size(); ++j) {
                if (!out.values[j].measured) {
                    out.errors.emplace_back(std::nullopt);
                    continue;
                }
                const double var = (sum2[j] - sum[j] * sum[j] / n) / (n - 1.0);
                out.errors.emplace_back(std::sqrt(std::max(0.0, var)));
            }
        },
        threads);

    FigureBundle bundle;
    bundle.target = target;
    for (std::size_t k = 0; k < times.size(); ++k)
        for (std::size_t j = 0; j < points[k].values.size(); ++j)
            bundle.rows.push_back({times[k], points[k].values[j].name, points[k].values[j].value, points[k].errors[j]});

    if (target == Figure::Fig2) {
        for (std::size_t i = 0; i < kDim; ++i)
            for (std::size_t f = 0; f < kDim; ++f) {
                const Complex e = inner(basis0.vectors[i], rho * basis0.vectors[f]);
                bundle.tomography.push_back({0.0, fmt::format("rho_re[{}][{}]", label(i), label(f)), e.real(), {}});
                bundle.tomography.push_back({0.0, fmt::format("rho_im[{}][{}]", label(i), label(f)), e.imag(), {}});
            }
    }

    json meta;
    meta["command"] = fmt::format("reproduce-{}", figure_name(target));
    meta["version"] = MHQ_VERSION;
    meta["config"] = config_json(cfg);
    meta["startup_check"] = check_json(check, cfg.steps);
    meta["units"] = {{"t_us", "microseconds"}, {"energy", "rad/us (hbar = 1)"}};
    meta["stderr"] = cfg.shots ? fmt::format("parametric bootstrap, {} replicates", cfg.bootstrap)
                               : std::string("none (noiseless)");
    meta["summary"] = figure_summary(target, bundle.rows, times);
    bundle.metadata = std::move(meta);
    return bundle;
}

void write_bundle(const FigureBundle &bundle, const std::filesystem::path &dir) {
    ensure_directory(dir);
    const std::string name(figure_name(bundle.target));
    write_series_csv(dir / (name + ".csv"), bundle.rows);
    if (!bundle.tomography.empty()) write_series_csv(dir / (name + "_tomography.csv"), bundle.tomography);
    write_json(dir / (name + ".json"), bundle.metadata);
}

SweepResult run_sweep(const RunConfig &cfg, unsigned threads) {
    cfg.validate();
    SweepConfig sc = cfg.sweep;
    sc.seed = cfg.seed;
    return sweep(sc, threads);
}

json summary_json(const SweepSummary &s) {
    return json{{"n_sets", s.n_sets},
                {"n_records", s.n_records},
                {"n_skipped", s.n_skipped},
                {"bound", kNegativityBound},
                {"bound_violations", s.bound_violations},
                {"consistency_violations", s.consistency_violations},
                {"fraction_aleph_positive", s.fraction_aleph_positive},
                {"median_min_w_original", s.median_min_w_original},
                {"median_min_w_twins", s.median_min_w_twins},
                {"median_min_req_original", s.median_min_req_original},
                {"median_min_req_twins", s.median_min_req_twins},
                {"twins_lower_median", s.twins_lower_median()},
                {"lowest_decile_twin_fraction", s.lowest_decile_twin_fraction},
                {"twin_share", s.twin_share},
                {"global_max_aleph",
                 {{"value", s.global_max_aleph},
                  {"set_index", s.global_max_index},
                  {"kind", point_kind_name(s.global_max_kind)},
                  {"unequal_phases", s.global_max_unequal_phases}}}};
}

void write_sweep(const SweepResult &result, const std::filesystem::path &dir) {
    ensure_directory(dir);
    const SweepConfig &sc = result.config;
    json meta;
    meta["command"] = "sweep";
    meta["version"] = MHQ_VERSION;
    meta["seed"] = sc.seed;
    meta["n_sets"] = sc.n_sets;
    meta["n_time"] = sc.n_time;
    meta["omega_range"] = {sc.omega_min, sc.omega_max};
    meta["phi_span"] = sc.phi_span;
    meta["units"] = units_name(sc.units);
    meta["skipped"] = result.skipped;
    meta["energy_units"] = "rad/us";

    const auto path = dir / "sweep.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "# " << meta.dump() << '\n';
    out << "set,kind,omega1,omega2,phi1,phi2,a,b,phase_a,phase_b,window_end_us,min_req,min_w,max_aleph\n";
    for (const auto &rec : result.records) {
        for (PointKind kind : {PointKind::Original, PointKind::TwinPhi1, PointKind::TwinPhi2}) {
            const WindowExtrema &p = rec.point(kind);
            const DriveParams &in = rec.drive.input;
            // twins keep the drawn amplitudes and copy one drawn phase
            const double phi1 = kind == PointKind::TwinPhi2 ? in.phi2 : in.phi1;
            const double phi2 = kind == PointKind::TwinPhi1 ? in.phi1 : in.phi2;
            out << rec.index << ',' << point_kind_name(kind) << ',' << format_number(in.omega1) << ','
                << format_number(in.omega2) << ',' << format_number(phi1) << ',' << format_number(phi2) << ','
                << format_number(rec.state.a) << ',' << format_number(rec.state.b) << ','
                << format_number(rec.state.phase_a) << ',' << format_number(rec.state.phase_b) << ','
                << format_number(p.window_end) << ',' << format_number(p.min_req) << ',' << format_number(p.min_w)
                << ',' << format_number(p.max_aleph) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());

    json summary;
    summary["command"] = "sweep";
    summary["version"] = MHQ_VERSION;
    summary["seed"] = sc.seed;
    summary["summary"] = summary_json(result.summary);
    write_json(dir / "sweep_summary.json", summary);
}

}  // namespace mhq::app
