#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mhq/analysis.hpp"
#include "mhq/errors.hpp"
#include "oracles.hpp"

using namespace mhq;

namespace {

constexpr double kWindow = 0.197851127044011;

struct Series {
    std::vector<double> w, w_tpm, aleph;
};

Series experimental_series(std::size_t n) {
    const DriveParams p = experimental_drive();
    const EnergyBasis b0 = energy_basis(0.0, p);
    const StateVector psi = initial_state_vector(experimental_state(), b0);
    const ClosedFormPropagator prop(p);
    Series s;
    for (std::size_t k = 1; k <= n; ++k) {
        const double t = kWindow * static_cast<double>(k) / static_cast<double>(n);
        const SchemeTables tables = scheme_tables(psi, make_slice(t, prop), b0);
        const MhqTable z = mhq_reconstruct(tables);
        s.w.push_back(avg_work_mhq(z));
        s.w_tpm.push_back(avg_work_tpm(tables));
        s.aleph.push_back(negativity(z));
    }
    return s;
}

}  // namespace

TEST_SUITE("analysis") {
    TEST_CASE("negativity of simple tables") {
        Table3 diag{};
        diag[0][0] = 0.2;
        diag[1][1] = 0.5;
        diag[2][2] = 0.3;
        CHECK(std::abs(negativity(diag)) < 1e-15);
        CHECK(total_negativity(diag) == doctest::Approx(1.0));

        Table3 neg{};
        neg[0][0] = 0.6;
        neg[0][1] = -0.1;
        neg[1][1] = 0.5;
        CHECK(negativity(neg) == doctest::Approx(0.2));

        KdqTable q;
        q.q[0][0] = Complex{0.5, 0.5};
        q.q[1][1] = Complex{0.5, -0.5};
        CHECK(negativity(q) == doctest::Approx(std::sqrt(2.0) - 1.0));
        CHECK(std::abs(negativity(real_part(q))) < 1e-15);
    }

    TEST_CASE("negativity stays below sqrt(3) - 1 for random drives and states") {
        std::mt19937_64 rng(51);
        std::uniform_real_distribution<double> ut(0.0, 0.5);
        for (int n = 0; n < 300; ++n) {
            const DriveParams p = testing::random_drive(rng);
            const StateVector psi = testing::random_state(rng);
            const MhqTable z = real_part(kdq_direct(outer(psi, psi), ut(rng), p));
            REQUIRE(negativity(z) <= kNegativityBound + 1e-9);
            REQUIRE(negativity(z) >= -1e-12);
        }
    }

    TEST_CASE("average work equals the energy change for pure and mixed states") {
        std::mt19937_64 rng(52);
        std::uniform_real_distribution<double> ut(0.0, 0.5), uw(0.0, 1.0);
        for (int n = 0; n < 200; ++n) {
            const DriveParams p = testing::random_drive(rng);
            const EnergyBasis b0 = energy_basis(0.0, p);
            const TimeSlice slice = make_slice(ut(rng), p);
            const StateVector a = testing::random_state(rng), b = testing::random_state(rng);
            const double w = uw(rng);
            const Operator rho = mix(w, outer(a, a), 1.0 - w, outer(b, b));
            const MhqTable z = real_part(kdq_direct(rho, slice, b0));
            const double de = energy_change(rho, slice, p);
            REQUIRE(std::abs(avg_work_mhq(z) - de) <= 1e-9 * std::max(1.0, std::abs(de)));
        }
    }

    TEST_CASE("TPM work from the TPM table") {
        Table3 p{};
        p[0][2] = 1.0;
        CHECK(avg_work_tpm(p, {1.0, 0.0, -1.0}, {2.0, 0.0, -2.0}) == doctest::Approx(-3.0));
    }

    TEST_CASE("classical decomposition reproduces the average work") {
        const DriveParams p = experimental_drive();
        const EnergyBasis b0 = energy_basis(0.0, p);
        const StateVector psi = initial_state_vector(experimental_state(), b0);
        for (double t : {0.02, 0.1, 0.15}) {
            const MhqTable z = mhq_reconstruct(scheme_tables(psi, t, p));
            const ClassicalDecomposition d = classical_decomposition(z);
            double mu_sum = 0.0;
            for (const auto &row : d.mu)
                for (double x : row) {
                    CHECK(x >= 0.0);
                    mu_sum += x;
                }
            CHECK(std::abs(mu_sum - 1.0) < 1e-12);
            CHECK(std::abs(d.work() - avg_work_mhq(z)) < 1e-10);
            CHECK(d.z_norm == doctest::Approx(1.0 + negativity(z)));
        }
        CHECK_THROWS_AS(classical_decomposition(MhqTable{}), DegenerateTable);
    }

    TEST_CASE("s statistic for the experimental state at the first grid point") {
        const DriveParams p = experimental_drive();
        const EnergyBasis b0 = energy_basis(0.0, p);
        const StateVector psi = initial_state_vector(experimental_state(), b0);
        const MhqTable z = mhq_reconstruct(scheme_tables(psi, kWindow / 200.0, p));
        CHECK(s_stat(z.z) == doctest::Approx((0.7654 + 0.0009) / 1.0001).epsilon(1e-10));
    }

    TEST_CASE("experimental window on 200 points: frozen extremes") {
        const Series s = experimental_series(200);
        const auto peak = std::max_element(s.aleph.begin(), s.aleph.end());
        CHECK(*peak == doctest::Approx(0.248365039231).epsilon(1e-9));
        CHECK(peak - s.aleph.begin() == 101);  // k = 102

        const ExtractionPeak e = extraction_peak(s.w, s.w_tpm);
        CHECK(e.min_w == doctest::Approx(-13.301250617698).epsilon(1e-10));
        CHECK(e.index_w == 100);
        CHECK(e.min_w_tpm == doctest::Approx(-3.394324576705).epsilon(1e-10));
        CHECK(e.index_w_tpm == 99);
        REQUIRE(e.ratio.has_value());
        CHECK(*e.ratio == doctest::Approx(3.918673749996).epsilon(1e-9));

        std::size_t positive = 0;
        for (double a : s.aleph) positive += a > 1e-3 ? 1 : 0;
        CHECK(positive == 191);
    }

    TEST_CASE("extraction peak edge cases") {
        const std::vector<double> pos{1.0, 2.0}, neg{-1.0, -2.0};
        CHECK_FALSE(extraction_peak(pos, neg).ratio.has_value());
        CHECK(*extraction_peak(neg, neg).ratio == doctest::Approx(1.0));
        CHECK(extraction_peak(neg, neg).index_w == 1);
        CHECK_FALSE(extraction_peak(std::vector<double>{}, neg).ratio.has_value());
    }

    TEST_CASE("work_stats bundles everything") {
        const DriveParams p = experimental_drive();
        const EnergyBasis b0 = energy_basis(0.0, p);
        const StateVector psi = initial_state_vector(experimental_state(), b0);
        const SchemeTables tables = scheme_tables(psi, 0.1, p);
        const MhqTable z = mhq_reconstruct(tables);
        const WorkStats w = work_stats(tables, z);
        CHECK(w.t == 0.1);
        CHECK(w.w_mhq == avg_work_mhq(z));
        CHECK(w.w_tpm == avg_work_tpm(tables));
        CHECK(w.total_negativity == doctest::Approx(w.negativity + 1.0));
    }
}
