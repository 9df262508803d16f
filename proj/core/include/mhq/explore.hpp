#pragma once

// Random-parameter study: for random drives and random pure states, find the
// extrema of Re q, <W> and the negativity over one dynamical window, and
// compare against the two equal-phase variants of each drive.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mhq/model.hpp"
#include "mhq/parallel.hpp"
#include "mhq/random.hpp"

namespace mhq {

struct SweepConfig {
    std::size_t n_sets = 1000;
    std::size_t n_time = 200;
    std::uint64_t seed = 0;
    double omega_min = 1.0;  // in `units`
    double omega_max = 20.0;
    double phi_span = 2.0;  // phi_k drawn from [-phi_span * omega_k, phi_span * omega_k]
    FrequencyUnits units = FrequencyUnits::MHzTimes2Pi;

    /// Throws InvalidParams on an empty interval, n_sets == 0 or n_time == 0.
    void validate() const;
};

/// |xi> = a e^{j phase_a}|+1> + b e^{j phase_b}|0> + sqrt(1 - a^2 - b^2)|-1>,
/// a ~ U[0,1], b ~ U[0, sqrt(1 - a^2)], phases ~ U[0, 2 pi). Not Haar-uniform.
struct RandomStateDraw {
    double a = 0.0;
    double b = 0.0;
    double phase_a = 0.0;
    double phase_b = 0.0;

    StateVector vector() const;
};

RandomStateDraw random_pure_state(Rng &rng);

struct DriveDraw {
    DriveParams input;    // as drawn, in the config's units
    DriveParams angular;  // converted to rad/us
};

/// Omega_k ~ U[omega_min, omega_max], then phi_k ~ U[-span Omega_k, span Omega_k],
/// drawn in the order Omega1, phi1, Omega2, phi2.
DriveDraw random_params(Rng &rng, const SweepConfig &config);

/// The two variants with phi1 = phi2 = phi1 and phi1 = phi2 = phi2.
std::array<DriveParams, 2> equal_phase_twins(const DriveParams &params);

/// T = 2 pi / sqrt(2 (Omega1^2 + Omega2^2) + phi1^2), one period when phi1 = phi2.
double time_window(const DriveParams &params);

/// Grid t_k = k T / n, k = 1..n.
std::vector<double> window_grid(double window_end, std::size_t n);

struct WindowExtrema {
    DriveParams params;
    double min_req = 0.0;    // min over t and (i, f) of Re q_if
    double min_w = 0.0;      // min over t of <W>, rad/us
    double max_aleph = 0.0;  // max over t of -1 + sum |Re q_if|
    double window_end = 0.0;
    bool aleph_at_negative_cell = true;  // every time with a negative cell had aleph > 0
};

WindowExtrema window_extrema(const DriveParams &params, const StateVector &psi, std::size_t n_time);

enum class PointKind { Original, TwinPhi1, TwinPhi2 };
std::string_view point_kind_name(PointKind kind);

struct SweepRecord {
    std::size_t index = 0;
    DriveDraw drive;
    RandomStateDraw state;
    WindowExtrema original;
    std::array<WindowExtrema, 2> twins;

    const WindowExtrema &point(PointKind kind) const;
};

struct SweepSummary {
    std::size_t n_sets = 0;
    std::size_t n_records = 0;
    std::size_t n_skipped = 0;
    std::size_t bound_violations = 0;       // max_aleph > sqrt(3) - 1 + 1e-9
    std::size_t consistency_violations = 0;  // negative cell with aleph <= 0
    double fraction_aleph_positive = 0.0;    // originals with max_aleph > 1e-9
    double median_min_w_original = 0.0;
    double median_min_w_twins = 0.0;
    double median_min_req_original = 0.0;
    double median_min_req_twins = 0.0;
    double lowest_decile_twin_fraction = 0.0;  // share of twins among the lowest 10% of min_w
    double twin_share = 2.0 / 3.0;
    double global_max_aleph = 0.0;
    std::size_t global_max_index = 0;
    PointKind global_max_kind = PointKind::Original;
    bool global_max_unequal_phases = false;

    bool twins_lower_median() const { return median_min_w_twins < median_min_w_original; }
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRecord> records;  // ordered by set index
    std::vector<std::size_t> skipped;  // indices of degenerate sets
    SweepSummary summary;
};

/// Set k draws from its own substream substream_seed(seed, k), so the output
/// is identical for any thread count.
SweepResult sweep(const SweepConfig &config, unsigned threads = thread_count());

SweepSummary summarize(const std::vector<SweepRecord> &records, std::size_t n_sets, std::size_t n_skipped);

}  // namespace mhq
