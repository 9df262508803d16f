#include "mhq/analysis.hpp"

#include <algorithm>

#include "mhq/errors.hpp"

namespace mhq {

double ClassicalDecomposition::work() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t f = 0; f < kDim; ++f) acc += mu[i][f] * (eff_final[i][f] - eff_init[i][f]);
    return acc;
}

double negativity(const KdqTable &q) {
    double acc = 0.0;
    for (const auto &row : q.q)
        for (Complex x : row) acc += std::abs(x);
    return acc - 1.0;
}

double total_negativity(const Table3 &z) {
    double acc = 0.0;
    for (const auto &row : z)
        for (double x : row) acc += std::abs(x);
    return acc;
}

double negativity(const Table3 &z) { return total_negativity(z) - 1.0; }

ClassicalDecomposition classical_decomposition(const MhqTable &z) {
    ClassicalDecomposition out;
    out.z_norm = total_negativity(z.z);
    if (out.z_norm == 0.0) throw DegenerateTable("classical_decomposition: table is identically zero");
    for (std::size_t i = 0; i < kDim; ++i) {
        for (std::size_t f = 0; f < kDim; ++f) {
            const double zif = z.z[i][f];
            const int sign = zif >= 0.0 ? 1 : -1;
            out.signs[i][f] = sign;
            out.mu[i][f] = std::abs(zif) / out.z_norm;
            out.eff_init[i][f] = out.z_norm * sign * z.e_init[i];
            out.eff_final[i][f] = out.z_norm * sign * z.e_final[f];
        }
    }
    return out;
}

double avg_work_mhq(const MhqTable &z) { return avg_work_tpm(z.z, z.e_init, z.e_final); }

double avg_work_tpm(const Table3 &p_tpm, const Real3 &e_init, const Real3 &e_final) {
    double acc = 0.0;
    for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t f = 0; f < kDim; ++f) acc += p_tpm[i][f] * (e_final[f] - e_init[i]);
    return acc;
}

double energy_change(const Operator &rho, const TimeSlice &slice, const DriveParams &params) {
    const Operator evolved = slice.u * rho * adjoint(slice.u);
    return trace_product(evolved, hamiltonian_rot(slice.t, params)).real() -
           trace_product(rho, hamiltonian_rot(0.0, params)).real();
}

double s_stat(const Table3 &z) {
    double acc = 0.0;
    for (std::size_t f = 0; f < kDim; ++f) acc += z[kPlus][f] + z[kZero][f];
    return acc;
}

WorkStats work_stats(const SchemeTables &tables, const MhqTable &z) {
    return {tables.t, avg_work_mhq(z), avg_work_tpm(tables), negativity(z.z), total_negativity(z.z), s_stat(z.z)};
}

ExtractionPeak extraction_peak(std::span<const double> w_mhq, std::span<const double> w_tpm) {
    ExtractionPeak out;
    if (w_mhq.empty() || w_tpm.empty()) return out;
    const auto iw = std::min_element(w_mhq.begin(), w_mhq.end());
    const auto it = std::min_element(w_tpm.begin(), w_tpm.end());
    out.min_w = *iw;
    out.index_w = static_cast<std::size_t>(iw - w_mhq.begin());
    out.min_w_tpm = *it;
    out.index_w_tpm = static_cast<std::size_t>(it - w_tpm.begin());
    if (out.min_w < 0.0 && out.min_w_tpm < 0.0) out.ratio = out.min_w / out.min_w_tpm;
    return out;
}

}  // namespace mhq
