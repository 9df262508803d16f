#include "mhq/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mhq/errors.hpp"
#include "mhq/tolerances.hpp"

namespace mhq {

double to_angular(double value, FrequencyUnits units) {
    switch (units) {
    case FrequencyUnits::MHzTimes2Pi:
        return 2.0 * std::numbers::pi * value;
    case FrequencyUnits::AngularRadPerUs:
    case FrequencyUnits::MHzPlain:
        return value;
    }
    return value;
}

std::string_view units_name(FrequencyUnits units) {
    switch (units) {
    case FrequencyUnits::AngularRadPerUs:
        return "angular_rad_per_us";
    case FrequencyUnits::MHzTimes2Pi:
        return "MHz_times_2pi";
    case FrequencyUnits::MHzPlain:
        return "MHz_plain";
    }
    return "unknown";
}

void DriveParams::validate() const {
    if (!std::isfinite(omega1) || !std::isfinite(omega2) || !std::isfinite(phi1) || !std::isfinite(phi2))
        throw InvalidParams("drive parameters must be finite");
    if (omega1 <= 0.0 || omega2 <= 0.0) throw InvalidParams("Rabi frequencies must be positive");
}

double DriveParams::effective_omega() const { return std::sqrt(0.5 * (omega1 * omega1 + omega2 * omega2)); }

void InitialStateSpec::validate() const {
    for (std::size_t k = 0; k < 3; ++k) {
        if (!std::isfinite(p[k]) || !std::isfinite(a[k]))
            throw InvalidSpec("initial state: non-finite entry at index " + std::to_string(k));
        if (p[k] < 0.0) throw InvalidSpec("initial state: negative population p[" + std::to_string(k) + "]");
    }
    if (raw_sum() <= 0.0) throw InvalidSpec("initial state: populations sum to zero");
}

Real3 InitialStateSpec::populations() const {
    const double s = raw_sum();
    return {p[0] / s, p[1] / s, p[2] / s};
}

DriveParams experimental_drive() {
    const double omega = to_angular(2.219, FrequencyUnits::MHzTimes2Pi);
    return DriveParams::equal(omega, 1.09 * omega);
}

InitialStateSpec experimental_state() { return {{0.7654, 0.0009, 0.2338}, {0.0073, 0.2787, 0.0002}}; }

Operator gell_mann(int k) {
    const Complex i = kJ;
    switch (k) {
    case 1:
        return {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}};
    case 2:
        return {{0, -i, 0}, {i, 0, 0}, {0, 0, 0}};
    case 6:
        return {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}};
    case 7:
        return {{0, 0, 0}, {0, 0, -i}, {0, i, 0}};
    default:
        throw UnsupportedIndex("gell_mann: index " + std::to_string(k) + " not in {1, 2, 6, 7}");
    }
}

SpinOperators spin_ops() {
    const double r = 1.0 / std::numbers::sqrt2;
    SpinOperators s;
    s.sx1 = r * gell_mann(1);
    s.sy1 = r * gell_mann(2);
    s.sx2 = r * gell_mann(6);
    s.sy2 = r * gell_mann(7);
    s.sz1 = Operator::diagonal(std::array<double, 3>{1.0, 0.0, 0.0});
    s.sz2 = Operator::diagonal(std::array<double, 3>{0.0, 0.0, -1.0});
    return s;
}

Operator hamiltonian_rot(double t, const DriveParams &params) {
    params.validate();
    const double r = 1.0 / std::numbers::sqrt2;
    const Complex c1 = params.omega1 * r * std::exp(-kJ * (params.phi1 * t));
    const Complex c2 = params.omega2 * r * std::exp(-kJ * (params.phi2 * t));
    Operator h(kDim);
    h(0, 1) = c1;
    h(1, 0) = std::conj(c1);
    h(2, 1) = c2;
    h(1, 2) = std::conj(c2);
    return h;
}

Operator hamiltonian_tilde(const DriveParams &params) {
    params.validate();
    const auto s = spin_ops();
    Operator h = params.omega1 * s.sx1;
    h += params.omega2 * s.sx2;
    h -= params.phi1 * s.sz1;
    h += params.phi2 * s.sz2;
    return h;
}

Real3 frame_rates(const DriveParams &params) { return {params.phi1, 0.0, params.phi2}; }

EnergyBasis make_energy_basis(double t, const Operator &hamiltonian) {
    const EigenSystem eig = herm_eig(hamiltonian);
    EnergyBasis out;
    out.t = t;
    for (std::size_t k = 0; k < kDim; ++k) {
        const std::size_t src = kDim - 1 - k;
        out.energies[k] = eig.values[src];
        StateVector v = eig.vectors[src];
        const Complex anchor = v[kDim - 1];
        if (std::abs(anchor) > tol::gauge_component) {
            const Complex phase = std::conj(anchor) / std::abs(anchor);
            for (auto &z : v) z *= phase;
        }
        out.projectors[k] = outer(v, v);
        out.vectors[k] = std::move(v);
    }
    const double scale = frobenius_norm(hamiltonian);
    const double gap = std::min(out.energies[0] - out.energies[1], out.energies[1] - out.energies[2]);
    out.near_degenerate = gap < tol::near_degenerate_gap * scale;
    return out;
}

EnergyBasis energy_basis(double t, const DriveParams &params) {
    return make_energy_basis(t, hamiltonian_rot(t, params));
}

StateVector initial_state_vector(const InitialStateSpec &spec, const EnergyBasis &basis0) {
    spec.validate();
    const Real3 p = spec.populations();
    StateVector xi(kDim);
    for (std::size_t i = 0; i < kDim; ++i) {
        const Complex amp = std::sqrt(p[i]) * std::exp(kJ * (2.0 * std::numbers::pi * spec.a[i]));
        for (std::size_t r = 0; r < kDim; ++r) xi[r] += amp * basis0.vectors[i][r];
    }
    return xi;
}

Operator initial_state(const InitialStateSpec &spec, const EnergyBasis &basis0) {
    const StateVector xi = initial_state_vector(spec, basis0);
    return outer(xi, xi);
}

}  // namespace mhq
