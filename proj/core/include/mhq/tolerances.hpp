#pragma once

// Every numerical threshold used by the library lives here.

namespace mhq::tol {

// qmath
inline constexpr double hermitian = 1e-12;        // relative to max|M|
inline constexpr double unitary = 1e-10;
inline constexpr double projector = 1e-10;
inline constexpr double eig_residual = 1e-10;     // relative to (1 + ||M||)
inline constexpr double eig_offdiag = 1e-15;      // Jacobi stopping point, relative
inline constexpr int eig_max_sweeps = 60;
inline constexpr double gauge_tie = 1e-9;         // magnitudes closer than this count as tied
inline constexpr double degenerate_value = 1e-12; // eigenvalues closer than this are tie-broken
inline constexpr double dimension_check = 1e-12;

// model
inline constexpr double near_degenerate_gap = 1e-6; // relative to ||H||
inline constexpr double gauge_component = 1e-8;     // |<-1|v>| below this falls back to qmath gauge
inline constexpr double completeness = 1e-10;

// schemes
inline constexpr double state_norm = 1e-10;
inline constexpr double complement_limit = 1e-9;  // p_i > 1 - this means no complement state
inline constexpr double negative_cell = 1e-9;     // Re q below -this counts as a negative cell
inline constexpr double distribution_sum = 1e-9;
inline constexpr double distribution_entry = 1e-12;
inline constexpr double rank_one = 1e-10;
inline constexpr double noiseless_table = 1e-10;

// propagate
inline constexpr double closed_form_startup = 1e-5;

}  // namespace mhq::tol
