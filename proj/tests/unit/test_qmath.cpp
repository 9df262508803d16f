#include <doctest.h>

#include <cmath>
#include <random>

#include "mhq/errors.hpp"
#include "mhq/model.hpp"
#include "mhq/qmath.hpp"
#include "oracles.hpp"

using namespace mhq;
using mhq::testing::random_hermitian;

namespace {

double reconstruction_residual(const Operator &m, const EigenSystem &e) {
    Operator rebuilt(m.dim());
    for (std::size_t k = 0; k < e.values.size(); ++k) rebuilt += e.values[k] * outer(e.vectors[k], e.vectors[k]);
    return frobenius_norm(rebuilt - m);
}

double max_eigen_residual(const Operator &m, const EigenSystem &e) {
    double worst = 0.0;
    for (std::size_t k = 0; k < e.values.size(); ++k) {
        StateVector r = m * e.vectors[k];
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= e.values[k] * e.vectors[k][i];
        worst = std::max(worst, norm(r));
    }
    return worst;
}

double max_overlap(const EigenSystem &e) {
    double worst = 0.0;
    for (std::size_t a = 0; a < e.vectors.size(); ++a)
        for (std::size_t b = 0; b < e.vectors.size(); ++b) {
            const double expect = a == b ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(inner(e.vectors[a], e.vectors[b]) - expect));
        }
    return worst;
}

}  // namespace

TEST_SUITE("qmath") {
    TEST_CASE("diagonal matrix gives sorted values and permuted identity columns") {
        const auto e = herm_eig(Operator::diagonal(std::array<double, 3>{1.0, 0.0, -1.0}));
        CHECK(e.values[0] == doctest::Approx(-1.0));
        CHECK(e.values[1] == doctest::Approx(0.0));
        CHECK(e.values[2] == doctest::Approx(1.0));
        CHECK(e.vectors[0] == basis_vector(3, 2));
        CHECK(e.vectors[1] == basis_vector(3, 1));
        CHECK(e.vectors[2] == basis_vector(3, 0));
    }

    TEST_CASE("equal-drive Hamiltonian has spectrum (-Omega, 0, Omega) at any time") {
        const DriveParams p = DriveParams::equal(13.9, 15.2);
        for (double t : {0.0, 0.013, 0.1, 0.77}) {
            const auto e = herm_eig(hamiltonian_rot(t, p));
            CHECK(std::abs(e.values[0] + 13.9) < 1e-10);
            CHECK(std::abs(e.values[1]) < 1e-10);
            CHECK(std::abs(e.values[2] - 13.9) < 1e-10);
        }
    }

    TEST_CASE("random Hermitian inputs: reconstruction, residual and orthonormality") {
        std::mt19937_64 rng(7);
        for (int n = 0; n < 1000; ++n) {
            const Operator m = random_hermitian(rng, 3, n % 2 ? 1.0 : 50.0);
            const auto e = herm_eig(m);
            const double scale = frobenius_norm(m);
            REQUIRE(reconstruction_residual(m, e) <= 1e-10 * (1.0 + scale));
            REQUIRE(max_eigen_residual(m, e) <= 1e-10 * scale);
            REQUIRE(max_overlap(e) <= 1e-10);
            REQUIRE(std::is_sorted(e.values.begin(), e.values.end()));
        }
    }

    TEST_CASE("larger dimensions work too") {
        std::mt19937_64 rng(11);
        const Operator m = random_hermitian(rng, 6);
        const auto e = herm_eig(m);
        CHECK(reconstruction_residual(m, e) <= 1e-10 * (1.0 + frobenius_norm(m)));
    }

    TEST_CASE("phase gauge: largest component real-positive") {
        std::mt19937_64 rng(3);
        for (int n = 0; n < 50; ++n) {
            const auto e = herm_eig(random_hermitian(rng));
            for (const auto &v : e.vectors) {
                std::size_t big = 0;
                for (std::size_t k = 1; k < 3; ++k)
                    if (std::abs(v[k]) > std::abs(v[big]) + 1e-9) big = k;
                CHECK(std::abs(v[big].imag()) < 1e-14);
                CHECK(v[big].real() > 0.0);
            }
        }
    }

    TEST_CASE("deterministic and stable under tiny perturbations") {
        std::mt19937_64 rng(5);
        for (int n = 0; n < 100; ++n) {
            const Operator m = random_hermitian(rng);
            const auto a = herm_eig(m);
            const auto b = herm_eig(m);
            REQUIRE(a.values == b.values);
            REQUIRE(a.vectors == b.vectors);

            Operator pert = m;
            pert(0, 1) += Complex{3e-15, -2e-15};
            pert(1, 0) = std::conj(pert(0, 1));
            pert(2, 2) += 5e-15;
            const auto c = herm_eig(pert);
            for (std::size_t k = 0; k < 3; ++k) {
                REQUIRE(std::abs(a.values[k] - c.values[k]) < 1e-12);
                // same vector up to a global phase
                REQUIRE(std::abs(std::abs(inner(a.vectors[k], c.vectors[k])) - 1.0) < 1e-9);
            }
        }
    }

    TEST_CASE("degenerate eigenvalues are ordered reproducibly") {
        const auto e = herm_eig(Operator::diagonal(std::array<double, 3>{2.0, 1.0, 1.0}));
        CHECK(e.values[0] == 1.0);
        CHECK(e.values[1] == 1.0);
        // lexicographic on (re, im): e_2 = (0,0,1) sorts before e_1 = (0,1,0)
        CHECK(e.vectors[0] == basis_vector(3, 2));
        CHECK(e.vectors[1] == basis_vector(3, 1));
        const auto id = herm_eig(Operator::identity(3));
        CHECK(id.vectors[0] == basis_vector(3, 2));
        CHECK(id.vectors[2] == basis_vector(3, 0));
    }

    TEST_CASE("non-Hermitian input is rejected") {
        Operator m = Operator::identity(3);
        m(0, 1) = 1.0;
        CHECK_THROWS_AS(herm_eig(m), NonHermitianInput);
        CHECK_THROWS_AS(unitary_exp(m, 1.0), NonHermitianInput);
        Operator nan = Operator::identity(3);
        nan(1, 1) = std::nan("");
        CHECK_THROWS_AS(herm_eig(nan), NonHermitianInput);
    }

    TEST_CASE("unitary_exp: zero time, diagonal case, inverse and group law") {
        std::mt19937_64 rng(9);
        const Operator m = random_hermitian(rng);
        CHECK(max_abs_diff(unitary_exp(m, 0.0), Operator::identity(3)) < 1e-14);

        const double w = 2.5, t = 0.7;
        const Operator d = unitary_exp(Operator::diagonal(std::array<double, 3>{w, 0.0, -w}), t);
        CHECK(std::abs(d(0, 0) - std::exp(-kJ * (w * t))) < 1e-14);
        CHECK(std::abs(d(1, 1) - 1.0) < 1e-14);
        CHECK(std::abs(d(2, 2) - std::exp(kJ * (w * t))) < 1e-14);
        CHECK(std::abs(d(0, 1)) < 1e-14);

        for (int n = 0; n < 100; ++n) {
            const Operator h = random_hermitian(rng, 3, 10.0);
            std::uniform_real_distribution<double> u(-2.0, 2.0);
            const double s = u(rng), r = u(rng);
            const Operator us = unitary_exp(h, s);
            REQUIRE(is_unitary(us));
            REQUIRE(max_abs_diff(us * unitary_exp(h, -s), Operator::identity(3)) <= 1e-10);
            REQUIRE(max_abs_diff(us * unitary_exp(h, r), unitary_exp(h, s + r)) <= 1e-9);
        }
    }

    TEST_CASE("matrix operations") {
        CHECK(trace(Operator::identity(3)) == Complex{3.0});
        std::mt19937_64 rng(13);
        std::normal_distribution<double> g;
        for (int n = 0; n < 100; ++n) {
            Operator a(3), b(3);
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c) {
                    a(r, c) = Complex{g(rng), g(rng)};
                    b(r, c) = Complex{g(rng), g(rng)};
                }
            REQUIRE(std::abs(trace(a * b) - trace(b * a)) <= 1e-12);
            REQUIRE(std::abs(trace_product(a, b) - trace(a * b)) <= 1e-12);
            REQUIRE(max_abs_diff(adjoint(a * b), adjoint(b) * adjoint(a)) <= 1e-13);
            REQUIRE(max_abs_diff(mix(2.0, a, -1.0, b), Complex{2.0} * a - b) <= 1e-14);
        }
        const StateVector psi = testing::random_state(rng);
        CHECK(std::abs(trace(outer(psi, psi)) - 1.0) < 1e-14);
        CHECK(norm(normalized(StateVector{3.0, 4.0, 0.0})) == doctest::Approx(1.0));
        CHECK(std::abs(determinant(Operator::diagonal(std::array<double, 3>{2.0, 3.0, -1.0})) + 6.0) < 1e-14);
        CHECK(frobenius_norm(Operator::identity(3)) == doctest::Approx(std::sqrt(3.0)));
    }

    TEST_CASE("dimension mismatches throw") {
        CHECK_THROWS_AS(Operator::identity(3) * Operator::identity(2), DimensionMismatch);
        CHECK_THROWS_AS(Operator::identity(3) + Operator::identity(2), DimensionMismatch);
        CHECK_THROWS_AS(trace_product(Operator::identity(3), Operator::identity(4)), DimensionMismatch);
        CHECK_THROWS_AS(Operator::identity(3) * StateVector(2), DimensionMismatch);
        CHECK_THROWS_AS(inner(StateVector(3), StateVector(2)), DimensionMismatch);
    }

    TEST_CASE("refinement predicates") {
        CHECK(is_projector(outer(basis_vector(3, 1), basis_vector(3, 1))));
        CHECK(is_projector(Operator::identity(3) - outer(basis_vector(3, 1), basis_vector(3, 1))));
        CHECK_FALSE(is_projector(Operator::identity(3)));
        CHECK_FALSE(is_projector(Complex{0.5} * Operator::identity(3)));
        CHECK(is_unitary(gell_mann(1) + Operator::diagonal(std::array<double, 3>{0.0, 0.0, 1.0})));
        CHECK_FALSE(is_unitary(Complex{2.0} * Operator::identity(3)));
    }
}
