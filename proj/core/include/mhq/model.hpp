#pragma once

// Physical objects of the driven spin-1 (qutrit) system in the microwave
// rotating frame, with hbar = 1, angular frequencies in rad/us, time in us.
//
// Matrix indices follow the basis ordering (|+1>, |0>, |-1>) -> (0, 1, 2).
// Energy labels i, f follow (+, 0, -) -> (0, 1, 2), i.e. descending energy.

#include <array>
#include <cstddef>
#include <string_view>

#include "mhq/qmath.hpp"

namespace mhq {

inline constexpr std::size_t kDim = 3;

/// Indices into energy-labelled tables.
inline constexpr std::size_t kPlus = 0;
inline constexpr std::size_t kZero = 1;
inline constexpr std::size_t kMinus = 2;

/// Matrix index of the m_S = 0 state, the one the readout resolves.
inline constexpr std::size_t kMs0 = 1;

inline constexpr std::array<std::string_view, 3> kLabelNames{"+", "0", "-"};

using Real3 = std::array<double, 3>;
using Table3 = std::array<Real3, 3>;

enum class FrequencyUnits {
    AngularRadPerUs,  // value is already rad/us
    MHzTimes2Pi,      // value is an ordinary frequency in MHz; multiplied by 2*pi
    MHzPlain,         // value in "MHz" taken as rad/us without a 2*pi factor
};

double to_angular(double value, FrequencyUnits units);
std::string_view units_name(FrequencyUnits units);

struct DriveParams {
    double omega1 = 0.0;  // Rabi frequency of |0> <-> |+1>, rad/us
    double omega2 = 0.0;  // Rabi frequency of |0> <-> |-1>, rad/us
    double phi1 = 0.0;    // phase sweep rate of drive 1, rad/us
    double phi2 = 0.0;    // phase sweep rate of drive 2, rad/us

    static DriveParams equal(double omega, double phi) { return {omega, omega, phi, phi}; }

    /// Throws InvalidParams unless both Rabi frequencies are positive and all fields finite.
    void validate() const;

    /// Magnitude of the nonzero instantaneous eigenvalues, sqrt((omega1^2 + omega2^2) / 2).
    double effective_omega() const;

    bool operator==(const DriveParams &) const = default;
};

/// |xi> = sum_i sqrt(p_i) exp(2 pi j a_i) |E_i(0)>.
struct InitialStateSpec {
    Real3 p{};  // populations in the H(0) energy basis, (+, 0, -)
    Real3 a{};  // phases in cycles

    /// Throws InvalidSpec if any p_i is negative or non-finite, or all vanish.
    void validate() const;
    double raw_sum() const { return p[0] + p[1] + p[2]; }
    /// p / sum(p).
    Real3 populations() const;
};

/// Drive used in the NV-centre experiment: Omega = 2 pi * 2.219 MHz, phi = 1.09 Omega.
DriveParams experimental_drive();
/// Initial state used in the NV-centre experiment.
InitialStateSpec experimental_state();

/// Gell-Mann matrix lambda_k, k in {1, 2, 6, 7}.
Operator gell_mann(int k);

struct SpinOperators {
    Operator sx1, sy1, sx2, sy2, sz1, sz2;
};
SpinOperators spin_ops();

/// Rotating-frame Hamiltonian
/// H(t) = Omega1 (Sx1 cos phi1 t + Sy1 sin phi1 t) + Omega2 (Sx2 cos phi2 t - Sy2 sin phi2 t).
Operator hamiltonian_rot(double t, const DriveParams &params);

/// Time-independent Hamiltonian in the frame co-rotating with the phase sweeps,
/// H~ = Omega1 Sx1 - phi1 Sz1 + Omega2 Sx2 + phi2 Sz2.
Operator hamiltonian_tilde(const DriveParams &params);

/// Diagonal generator D = phi1 |+1><+1| + phi2 |-1><-1| with H(t) = e^{-jtD} H(0) e^{jtD}.
Real3 frame_rates(const DriveParams &params);

struct EnergyBasis {
    double t = 0.0;
    Real3 energies{};                      // (+, 0, -), descending
    std::array<StateVector, 3> vectors;    // |E_k(t)>, |-1> component real-positive
    std::array<Operator, 3> projectors;    // Xi_k(t)
    bool near_degenerate = false;          // labels may be unstable when set
};

EnergyBasis energy_basis(double t, const DriveParams &params);

/// Relabels and re-gauges a Hermitian 3x3 eigensystem as an EnergyBasis.
EnergyBasis make_energy_basis(double t, const Operator &hamiltonian);

StateVector initial_state_vector(const InitialStateSpec &spec, const EnergyBasis &basis0);
/// rho = |xi><xi|.
Operator initial_state(const InitialStateSpec &spec, const EnergyBasis &basis0);

}  // namespace mhq
