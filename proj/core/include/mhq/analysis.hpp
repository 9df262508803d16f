#pragma once

// Non-classicality and work statistics of quasiprobability tables.

#include <array>
#include <cmath>
#include <optional>
#include <span>

#include "mhq/model.hpp"
#include "mhq/schemes.hpp"

namespace mhq {

/// Upper bound sqrt(d) - 1 of the negativity for d = 3.
inline const double kNegativityBound = std::sqrt(3.0) - 1.0;

struct WorkStats {
    double t = 0.0;
    double w_mhq = 0.0;  // rad/us
    double w_tpm = 0.0;  // rad/us
    double negativity = 0.0;
    double total_negativity = 0.0;
    double s_stat = 0.0;
};

struct ClassicalDecomposition {
    Table3 mu{};                             // |z_if| / ||z||
    std::array<std::array<int, 3>, 3> signs{};  // +1 for z_if >= 0, -1 otherwise
    double z_norm = 0.0;
    Table3 eff_init{};   // ||z|| sgn(z_if) E_i(0)
    Table3 eff_final{};  // ||z|| sgn(z_if) E_f(t)

    /// sum_if mu_if (eff_final_if - eff_init_if).
    double work() const;
};

/// -1 + sum |q_if| with the complex modulus.
double negativity(const KdqTable &q);
/// -1 + sum |z_if|.
double negativity(const Table3 &z);
inline double negativity(const MhqTable &z) { return negativity(z.z); }

/// ||z|| = sum |z_if|.
double total_negativity(const Table3 &z);

/// Throws DegenerateTable when ||z|| = 0.
ClassicalDecomposition classical_decomposition(const MhqTable &z);

/// <W> = sum z_if (E_f(t) - E_i(0)).
double avg_work_mhq(const MhqTable &z);
/// <W>_TPM = sum p_tpm_if (E_f(t) - E_i(0)).
double avg_work_tpm(const Table3 &p_tpm, const Real3 &e_init, const Real3 &e_final);
inline double avg_work_tpm(const SchemeTables &t) { return avg_work_tpm(t.p_tpm, t.e_init, t.e_final); }

/// Tr[U rho U^dag H(t)] - Tr[rho H(0)].
double energy_change(const Operator &rho, const TimeSlice &slice, const DriveParams &params);

/// s = sum_f (z_{+f} + z_{0f}).
double s_stat(const Table3 &z);

WorkStats work_stats(const SchemeTables &tables, const MhqTable &z);

struct ExtractionPeak {
    double min_w = 0.0;
    std::size_t index_w = 0;
    double min_w_tpm = 0.0;
    std::size_t index_w_tpm = 0;
    /// min <W> / min <W>_TPM, only when both minima are negative.
    std::optional<double> ratio;
};

ExtractionPeak extraction_peak(std::span<const double> w_mhq, std::span<const double> w_tpm);

}  // namespace mhq
