#include <doctest.h>

#include <cmath>

#include "mhq/analysis.hpp"
#include "mhq/errors.hpp"
#include "mhq/explore.hpp"

using namespace mhq;

TEST_SUITE("explore") {
    TEST_CASE("random pure states are normalized and reproducible") {
        Rng a(7), b(7);
        for (int n = 0; n < 1000; ++n) {
            const RandomStateDraw d = random_pure_state(a);
            const RandomStateDraw e = random_pure_state(b);
            REQUIRE(d.a == e.a);
            REQUIRE(d.phase_b == e.phase_b);
            REQUIRE(d.a * d.a + d.b * d.b <= 1.0 + 1e-15);
            REQUIRE(std::abs(norm(d.vector()) - 1.0) <= 1e-12);
            REQUIRE(d.vector()[2].imag() == 0.0);
        }
    }

    TEST_CASE("random drives respect the configured ranges") {
        SweepConfig cfg;
        Rng rng(3);
        for (int n = 0; n < 500; ++n) {
            const DriveDraw d = random_params(rng, cfg);
            REQUIRE(d.input.omega1 >= cfg.omega_min);
            REQUIRE(d.input.omega2 < cfg.omega_max);
            REQUIRE(std::abs(d.input.phi1) <= cfg.phi_span * d.input.omega1);
            REQUIRE(std::abs(d.input.phi2) <= cfg.phi_span * d.input.omega2);
            REQUIRE(d.angular.omega1 == doctest::Approx(2.0 * std::numbers::pi * d.input.omega1));
        }
        cfg.units = FrequencyUnits::AngularRadPerUs;
        Rng r2(3);
        const DriveDraw d = random_params(r2, cfg);
        CHECK(d.angular.omega1 == d.input.omega1);
    }

    TEST_CASE("equal-phase twins") {
        const DriveParams p{1.0, 2.0, 3.0, -4.0};
        const auto twins = equal_phase_twins(p);
        CHECK(twins[0].phi1 == 3.0);
        CHECK(twins[0].phi2 == 3.0);
        CHECK(twins[1].phi1 == -4.0);
        CHECK(twins[1].phi2 == -4.0);
        CHECK(twins[1].omega2 == 2.0);
    }

    TEST_CASE("time window and grid") {
        CHECK(time_window(experimental_drive()) == doctest::Approx(0.197851127044011).epsilon(1e-12));
        const auto g = window_grid(2.0, 4);
        REQUIRE(g.size() == 4);
        CHECK(g.front() == 0.5);
        CHECK(g.back() == 2.0);
    }

    TEST_CASE("window extrema for the experimental configuration") {
        const DriveParams p = experimental_drive();
        const StateVector psi = initial_state_vector(experimental_state(), energy_basis(0.0, p));
        const WindowExtrema w = window_extrema(p, psi, 200);
        CHECK(w.max_aleph == doctest::Approx(0.248365039231).epsilon(1e-9));
        CHECK(w.min_w == doctest::Approx(-13.301250617698).epsilon(1e-10));
        CHECK(w.min_req == doctest::Approx(-0.12418252).epsilon(1e-6));
        CHECK(w.aleph_at_negative_cell);
    }

    TEST_CASE("sweep is identical for any thread count and respects the bound") {
        SweepConfig cfg;
        cfg.n_sets = 12;
        cfg.n_time = 40;
        cfg.seed = 99;
        const SweepResult one = sweep(cfg, 1);
        const SweepResult three = sweep(cfg, 3);
        REQUIRE(one.records.size() == three.records.size());
        for (std::size_t k = 0; k < one.records.size(); ++k) {
            CHECK(one.records[k].index == three.records[k].index);
            CHECK(one.records[k].original.min_w == three.records[k].original.min_w);
            CHECK(one.records[k].twins[1].max_aleph == three.records[k].twins[1].max_aleph);
        }
        CHECK(one.summary.bound_violations == 0);
        CHECK(one.summary.consistency_violations == 0);
        CHECK(one.summary.n_records + one.summary.n_skipped == 12);
        CHECK(one.summary.global_max_aleph <= kNegativityBound + 1e-9);

        cfg.seed = 100;
        CHECK(sweep(cfg, 1).records[0].original.min_w != one.records[0].original.min_w);
    }

    TEST_CASE("summary statistics") {
        std::vector<SweepRecord> recs(2);
        for (std::size_t k = 0; k < 2; ++k) {
            recs[k].index = k;
            recs[k].original.min_w = -10.0 - static_cast<double>(k);
            recs[k].original.max_aleph = 0.3;
            recs[k].original.params = {1.0, 1.0, 1.0, 2.0};
            recs[k].twins[0].min_w = -1.0;
            recs[k].twins[1].min_w = -2.0;
        }
        recs[1].twins[0].max_aleph = 0.5;
        const SweepSummary s = summarize(recs, 3, 1);
        CHECK(s.n_records == 2);
        CHECK(s.n_skipped == 1);
        CHECK(s.median_min_w_original == doctest::Approx(-10.5));
        CHECK(s.median_min_w_twins == doctest::Approx(-1.5));
        CHECK_FALSE(s.twins_lower_median());
        CHECK(s.fraction_aleph_positive == 1.0);
        CHECK(s.global_max_aleph == 0.5);
        CHECK(s.global_max_kind == PointKind::TwinPhi1);
        CHECK(s.global_max_index == 1);
        CHECK(s.lowest_decile_twin_fraction == 0.0);
        CHECK(point_kind_name(PointKind::TwinPhi2) == "twin_phi2");
    }

    TEST_CASE("invalid sweep configurations") {
        SweepConfig cfg;
        cfg.n_sets = 0;
        CHECK_THROWS_AS(cfg.validate(), InvalidParams);
        cfg = {};
        cfg.omega_max = 0.5;
        CHECK_THROWS_AS(sweep(cfg, 1), InvalidParams);
        cfg = {};
        cfg.n_time = 0;
        CHECK_THROWS_AS(cfg.validate(), InvalidParams);
    }
}
