#include "mhq/explore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mhq/analysis.hpp"
#include "mhq/errors.hpp"
#include "mhq/propagate.hpp"
#include "mhq/schemes.hpp"
#include "mhq/tolerances.hpp"

namespace mhq {

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

bool finite(const WindowExtrema &w) {
    return std::isfinite(w.min_req) && std::isfinite(w.min_w) && std::isfinite(w.max_aleph);
}

}  // namespace

void SweepConfig::validate() const {
    if (n_sets == 0) throw InvalidParams("sweep: n_sets must be at least 1");
    if (n_time == 0) throw InvalidParams("sweep: n_time must be at least 1");
    if (!(omega_min > 0.0) || !(omega_max > omega_min)) throw InvalidParams("sweep: empty Omega interval");
    if (!(phi_span > 0.0)) throw InvalidParams("sweep: phi span must be positive");
}

StateVector RandomStateDraw::vector() const {
    const double c = std::sqrt(std::max(0.0, 1.0 - a * a - b * b));
    return {a * std::exp(kJ * phase_a), b * std::exp(kJ * phase_b), Complex{c}};
}

RandomStateDraw random_pure_state(Rng &rng) {
    RandomStateDraw d;
    d.a = rng.uniform();
    d.b = rng.uniform(0.0, std::sqrt(1.0 - d.a * d.a));
    d.phase_a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    d.phase_b = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return d;
}

DriveDraw random_params(Rng &rng, const SweepConfig &config) {
    DriveDraw d;
    d.input.omega1 = rng.uniform(config.omega_min, config.omega_max);
    d.input.phi1 = rng.uniform(-config.phi_span * d.input.omega1, config.phi_span * d.input.omega1);
    d.input.omega2 = rng.uniform(config.omega_min, config.omega_max);
    d.input.phi2 = rng.uniform(-config.phi_span * d.input.omega2, config.phi_span * d.input.omega2);
    d.angular = {to_angular(d.input.omega1, config.units), to_angular(d.input.omega2, config.units),
                 to_angular(d.input.phi1, config.units), to_angular(d.input.phi2, config.units)};
    return d;
}

std::array<DriveParams, 2> equal_phase_twins(const DriveParams &params) {
    return {DriveParams{params.omega1, params.omega2, params.phi1, params.phi1},
            DriveParams{params.omega1, params.omega2, params.phi2, params.phi2}};
}

double time_window(const DriveParams &params) {
    return 2.0 * std::numbers::pi /
           std::sqrt(2.0 * (params.omega1 * params.omega1 + params.omega2 * params.omega2) + params.phi1 * params.phi1);
}

std::vector<double> window_grid(double window_end, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = window_end * static_cast<double>(k + 1) / static_cast<double>(n);
    return out;
}

WindowExtrema window_extrema(const DriveParams &params, const StateVector &psi, std::size_t n_time) {
    params.validate();
    WindowExtrema out;
    out.params = params;
    out.window_end = time_window(params);
    out.min_req = std::numeric_limits<double>::infinity();
    out.min_w = std::numeric_limits<double>::infinity();
    out.max_aleph = -std::numeric_limits<double>::infinity();

    const ClosedFormPropagator propagator(params);
    const EnergyBasis basis0 = energy_basis(0.0, params);
    const Operator rho = outer(psi, psi);
    for (double t : window_grid(out.window_end, n_time)) {
        const MhqTable z = real_part(kdq_direct(rho, make_slice(t, propagator), basis0));
        double cell_min = std::numeric_limits<double>::infinity();
        for (const auto &row : z.z)
            for (double x : row) cell_min = std::min(cell_min, x);
        const double aleph = negativity(z.z);
        out.min_req = std::min(out.min_req, cell_min);
        out.min_w = std::min(out.min_w, avg_work_mhq(z));
        out.max_aleph = std::max(out.max_aleph, aleph);
        if (cell_min < -tol::negative_cell && !(aleph > 0.0)) out.aleph_at_negative_cell = false;
    }
    return out;
}

std::string_view point_kind_name(PointKind kind) {
    switch (kind) {
    case PointKind::Original:
        return "original";
    case PointKind::TwinPhi1:
        return "twin_phi1";
    case PointKind::TwinPhi2:
        return "twin_phi2";
    }
    return "unknown";
}

const WindowExtrema &SweepRecord::point(PointKind kind) const {
    switch (kind) {
    case PointKind::TwinPhi1:
        return twins[0];
    case PointKind::TwinPhi2:
        return twins[1];
    case PointKind::Original:
        break;
    }
    return original;
}

SweepResult sweep(const SweepConfig &config, unsigned threads) {
    config.validate();
    std::vector<std::optional<SweepRecord>> slots(config.n_sets);
    parallel_for(
        config.n_sets,
        [&](std::size_t k) {
            Rng rng(substream_seed(config.seed, k));
            SweepRecord rec;
            rec.index = k;
            rec.drive = random_params(rng, config);
            rec.state = random_pure_state(rng);
            const StateVector psi = rec.state.vector();
            try {
                rec.original = window_extrema(rec.drive.angular, psi, config.n_time);
                const auto twins = equal_phase_twins(rec.drive.angular);
                for (std::size_t j = 0; j < 2; ++j) rec.twins[j] = window_extrema(twins[j], psi, config.n_time);
            } catch (const Error &) {
                return;
            }
            if (finite(rec.original) && finite(rec.twins[0]) && finite(rec.twins[1])) slots[k] = std::move(rec);
        },
        threads);

    SweepResult out;
    out.config = config;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (slots[k])
            out.records.push_back(std::move(*slots[k]));
        else
            out.skipped.push_back(k);
    }
    out.summary = summarize(out.records, config.n_sets, out.skipped.size());
    return out;
}

SweepSummary summarize(const std::vector<SweepRecord> &records, std::size_t n_sets, std::size_t n_skipped) {
    SweepSummary s;
    s.n_sets = n_sets;
    s.n_records = records.size();
    s.n_skipped = n_skipped;
    if (records.empty()) return s;

    struct Point {
        double min_w;
        bool twin;
    };
    std::vector<Point> points;
    std::vector<double> w_orig, w_twin, req_orig, req_twin;
    std::size_t positive = 0;
    s.global_max_aleph = -std::numeric_limits<double>::infinity();
    for (const auto &rec : records) {
        for (PointKind kind : {PointKind::Original, PointKind::TwinPhi1, PointKind::TwinPhi2}) {
            const WindowExtrema &p = rec.point(kind);
            const bool twin = kind != PointKind::Original;
            points.push_back({p.min_w, twin});
            (twin ? w_twin : w_orig).push_back(p.min_w);
            (twin ? req_twin : req_orig).push_back(p.min_req);
            if (p.max_aleph > kNegativityBound + 1e-9) ++s.bound_violations;
            if (!p.aleph_at_negative_cell) ++s.consistency_violations;
            if (p.max_aleph > s.global_max_aleph) {
                s.global_max_aleph = p.max_aleph;
                s.global_max_index = rec.index;
                s.global_max_kind = kind;
                s.global_max_unequal_phases = p.params.phi1 != p.params.phi2;
            }
        }
        if (rec.original.max_aleph > 1e-9) ++positive;
    }
    s.fraction_aleph_positive = static_cast<double>(positive) / static_cast<double>(records.size());
    s.median_min_w_original = median(w_orig);
    s.median_min_w_twins = median(w_twin);
    s.median_min_req_original = median(req_orig);
    s.median_min_req_twins = median(req_twin);

    std::stable_sort(points.begin(), points.end(), [](const Point &x, const Point &y) { return x.min_w < y.min_w; });
    const std::size_t decile = std::max<std::size_t>(1, points.size() / 10);
    std::size_t twins_in_decile = 0;
    for (std::size_t k = 0; k < decile; ++k) twins_in_decile += points[k].twin ? 1 : 0;
    s.lowest_decile_twin_fraction = static_cast<double>(twins_in_decile) / static_cast<double>(decile);
    return s;
}

}  // namespace mhq
