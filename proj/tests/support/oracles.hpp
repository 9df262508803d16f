#pragma once

// Test-only reference computations. Nothing here calls into the eigensolver or
// the closed-form propagator, so they can check those independently.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "mhq/model.hpp"
#include "mhq/qmath.hpp"

namespace mhq::testing {

/// Monic characteristic polynomial det(lambda I - M) = lambda^3 + c2 lambda^2 + c1 lambda + c0.
inline std::array<double, 3> char_poly(const Operator &m) {
    const double c2 = -trace(m).real();
    Complex minors = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) minors += m(i, i) * m(j, j) - m(i, j) * m(j, i);
    return {-determinant(m).real(), minors.real(), c2};  // c0, c1, c2
}

/// Real roots (ascending) of a monic cubic with three real roots, trigonometric method.
inline std::array<double, 3> cubic_roots(double c0, double c1, double c2) {
    const double shift = c2 / 3.0;
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    std::array<double, 3> r{};
    if (std::abs(p) < 1e-300) {
        r.fill(std::cbrt(-q) - shift);
        return r;
    }
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) r[k] = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift;
    std::sort(r.begin(), r.end());
    return r;
}

/// Classical RK4 integration of i dU/dt = H(t) U from U(0) = I.
inline Operator rk4_propagator(double t, const DriveParams &params, std::size_t steps) {
    const double h = t / static_cast<double>(steps);
    auto deriv = [&](double s, const Operator &u) { return Complex{0.0, -1.0} * (hamiltonian_rot(s, params) * u); };
    Operator u = Operator::identity(3);
    for (std::size_t k = 0; k < steps; ++k) {
        const double s = h * static_cast<double>(k);
        const Operator k1 = deriv(s, u);
        const Operator k2 = deriv(s + 0.5 * h, u + Complex{0.5 * h} * k1);
        const Operator k3 = deriv(s + 0.5 * h, u + Complex{0.5 * h} * k2);
        const Operator k4 = deriv(s + h, u + Complex{h} * k3);
        u += Complex{h / 6.0} * (k1 + Complex{2.0} * k2 + Complex{2.0} * k3 + k4);
    }
    return u;
}

inline Operator random_hermitian(std::mt19937_64 &rng, std::size_t dim = 3, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Operator m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        m(r, r) = g(rng);
        for (std::size_t c = r + 1; c < dim; ++c) {
            m(r, c) = Complex{g(rng), g(rng)};
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

inline StateVector random_state(std::mt19937_64 &rng, std::size_t dim = 3) {
    std::normal_distribution<double> g(0.0, 1.0);
    StateVector v(dim);
    for (auto &z : v) z = Complex{g(rng), g(rng)};
    return normalized(v);
}

inline DriveParams random_drive(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> om(3.0, 40.0), ph(-2.0, 2.0);
    DriveParams p;
    p.omega1 = om(rng);
    p.omega2 = om(rng);
    p.phi1 = ph(rng) * p.omega1;
    p.phi2 = ph(rng) * p.omega2;
    return p;
}

/// Unitary matrix with one random phase per column, for gauge checks.
inline Operator random_unitary(std::mt19937_64 &rng) {
    return unitary_exp(random_hermitian(rng), 1.0);
}

/// Analytic unit eigenvectors of H(t) for equal drives, labels (+, 0, -).
inline std::array<StateVector, 3> equal_drive_eigenvectors(double t, double phi) {
    const Complex e = std::exp(Complex{0.0, phi * t});
    const double r = 1.0 / std::numbers::sqrt2;
    return {StateVector{0.5, r * e, 0.5}, StateVector{-r, 0.0, r}, StateVector{0.5, -r * e, 0.5}};
}

}  // namespace mhq::testing
