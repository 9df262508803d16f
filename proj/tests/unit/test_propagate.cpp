#include <doctest.h>

#include <cmath>
#include <random>

#include "mhq/errors.hpp"
#include "mhq/propagate.hpp"
#include "oracles.hpp"

using namespace mhq;

TEST_SUITE("propagate") {
    TEST_CASE("closed form at t = 0 is the identity") {
        CHECK(max_abs_diff(propagator_closed(0.0, experimental_drive()).u, Operator::identity(3)) < 1e-14);
    }

    TEST_CASE("zero drive frequencies reduce to exp(-jtH0)") {
        const DriveParams p{4.0, 6.5, 0.0, 0.0};
        const double t = 0.37;
        CHECK(max_abs_diff(propagator_closed(t, p).u, unitary_exp(hamiltonian_rot(0.0, p), t)) < 1e-12);
    }

    TEST_CASE("closed form matches an independent RK4 integration") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> ut(0.0, 0.5);
        for (int n = 0; n < 20; ++n) {
            const DriveParams p = testing::random_drive(rng);
            const double t = ut(rng);
            const Operator rk = testing::rk4_propagator(t, p, 4000);
            REQUIRE(max_abs_diff(propagator_closed(t, p).u, rk) <= 1e-8);
        }
    }

    TEST_CASE("closed form satisfies the equation of motion") {
        const auto p = experimental_drive();
        const ClosedFormPropagator prop(p);
        const double h = 1e-5;
        for (double t : {0.03, 0.1, 0.18}) {
            const Operator du = Complex{1.0 / (2.0 * h)} * (prop.at(t + h) - prop.at(t - h));
            const Operator rhs = Complex{0.0, -1.0} * (hamiltonian_rot(t, p) * prop.at(t));
            CHECK(max_abs_diff(du, rhs) < 1e-6 * frobenius_norm(rhs));
        }
    }

    TEST_CASE("closed form and stepped product agree, second-order convergence") {
        const auto p = experimental_drive();
        const double t = 0.19;
        const Operator exact = propagator_closed(t, p).u;
        const double e1 = frobenius_norm(propagator_stepped(t, p, 2000).u - exact);
        const double e2 = frobenius_norm(propagator_stepped(t, p, 4000).u - exact);
        CHECK(e2 < 1e-5);
        CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
        const auto r = propagator_stepped(t, p, 10);
        CHECK(r.method == PropagatorMethod::Stepped);
        CHECK(r.n_steps == 10);
    }

    TEST_CASE("unitarity, group law and periodic drive") {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> ut(0.0, 1.0);
        for (int n = 0; n < 50; ++n) {
            const DriveParams p = testing::random_drive(rng);
            const double t = ut(rng);
            const ClosedFormPropagator prop(p);
            REQUIRE(is_unitary(prop.at(t)));
            REQUIRE(max_abs_diff(adjoint(prop.at(t)) * prop.at(t), Operator::identity(3)) <= 1e-10);
        }
        // equal phases: H(t) has period 2 pi / phi, so U(t + P) = U(t) U(P)
        const auto p = experimental_drive();
        const ClosedFormPropagator prop(p);
        const double period = 2.0 * std::numbers::pi / p.phi1;
        for (double t : {0.01, 0.2, 0.35})
            CHECK(max_abs_diff(prop.at(t + period), prop.at(t) * prop.at(period)) < 1e-10);
    }

    TEST_CASE("startup validation") {
        const auto p = experimental_drive();
        const ClosedFormCheck ok = validate_closed_form(p, 0.2, 20000, 5, 1e-5);
        CHECK(ok.ok);
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(ok.times[k] > 0.0);
            CHECK(ok.times[k] <= 0.2);
            CHECK(ok.deviation[k] < 1e-5);
        }
        CHECK_FALSE(validate_closed_form(p, 0.2, 5, 5, 1e-5).ok);
        const ClosedFormCheck again = validate_closed_form(p, 0.2, 20000, 5, 1e-5);
        CHECK(again.times == ok.times);
    }

    TEST_CASE("stepped grid matches separate stepped runs") {
        const auto p = experimental_drive();
        const auto grid = propagator_stepped_grid(0.2, p, 400, 4);
        REQUIRE(grid.size() == 4);
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(grid[k].t == doctest::Approx(0.05 * static_cast<double>(k + 1)));
            CHECK(grid[k].n_steps == 100 * (k + 1));
            CHECK(max_abs_diff(grid[k].u, propagator_stepped(grid[k].t, p, grid[k].n_steps).u) < 1e-13);
        }
        CHECK_THROWS_AS(propagator_stepped_grid(0.2, p, 10, 3), InvalidParams);
    }

    TEST_CASE("invalid arguments") {
        CHECK_THROWS_AS(propagator_stepped(0.1, experimental_drive(), 0), InvalidParams);
        CHECK_THROWS_AS(ClosedFormPropagator(DriveParams{-1.0, 1.0, 0.0, 0.0}), InvalidParams);
    }
}
