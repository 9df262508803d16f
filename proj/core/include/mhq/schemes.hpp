#pragma once

// End-point (END), two-point (TPM) and weak two-point (wTPM) energy
// measurement schemes, Margenau-Hill reconstruction from them, and the
// direct Kirkwood-Dirac oracle.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "mhq/model.hpp"
#include "mhq/propagate.hpp"
#include "mhq/qmath.hpp"

namespace mhq {

using ComplexTable3 = std::array<std::array<Complex, 3>, 3>;

/// U(t) together with the instantaneous energy basis of H(t).
struct TimeSlice {
    double t = 0.0;
    Operator u;
    EnergyBasis final_basis;
};

TimeSlice make_slice(double t, const ClosedFormPropagator &propagator);
TimeSlice make_slice(double t, const DriveParams &params);

struct SchemeTables {
    double t = 0.0;
    Table3 p_tpm{};
    Table3 p_wtpm{};
    Real3 p_end{};
    Real3 p_init{};
    Real3 e_init{};   // E_i(0)
    Real3 e_final{};  // E_f(t)
};

/// Kirkwood-Dirac table q_{if}, rows i = initial energy label, columns f = final.
struct KdqTable {
    double t = 0.0;
    ComplexTable3 q{};
    Real3 e_init{};
    Real3 e_final{};
};

/// Real (Margenau-Hill) table z_{if} = Re q_{if}.
struct MhqTable {
    double t = 0.0;
    Table3 z{};
    Real3 e_init{};
    Real3 e_final{};
};

MhqTable real_part(const KdqTable &kdq);

/// Conditional probabilities the experiment measures for one initial state.
struct ConditionalProbabilities {
    double t = 0.0;
    Real3 p_init{};
    Real3 p_end{};         // p(f | xi)
    Table3 given_i{};      // given_i[i][f] = p(f | i)
    Table3 given_not_i{};  // given_not_i[i][f] = p(f | i-bar)
    Real3 e_init{};
    Real3 e_final{};
};

/// p(f | psi) = Tr[U |psi><psi| U^dag Xi_f(t)]. Throws UnnormalizedState.
Real3 conditional_prob(const StateVector &psi, const TimeSlice &slice);
Real3 conditional_prob(const StateVector &psi, double t, const DriveParams &params);

/// Pure state (I - Pi_i)|psi> / sqrt(1 - p_i). Throws DegenerateComplement when p_i ~ 1.
StateVector complement_state(const StateVector &psi, std::size_t i, const EnergyBasis &basis0);

/// Measures p(f|xi), p(f|i) and p(f|i-bar) for every i. Complement states
/// with p_i ~ 1 carry zero weight and are left as zero rows.
ConditionalProbabilities measure_conditionals(const StateVector &psi, const TimeSlice &slice,
                                              const EnergyBasis &basis0);

/// p_tpm = p_i p(f|i); p_wtpm = p_i p(f|i) + (1 - p_i) p(f|i-bar); p_end as measured.
SchemeTables compose_tables(const ConditionalProbabilities &cond);

/// All three schemes for the pure initial state psi, by experimental composition.
SchemeTables scheme_tables(const StateVector &psi, const TimeSlice &slice, const EnergyBasis &basis0);
SchemeTables scheme_tables(const StateVector &psi, double t, const DriveParams &params);

/// p_tpm[i][f] = Tr[U Pi_i rho Pi_i U^dag Xi_f]; accepts mixed rho.
Table3 tpm_table(const Operator &rho, const TimeSlice &slice, const EnergyBasis &basis0);
/// p_end[f] = Tr[U rho U^dag Xi_f]; accepts mixed rho.
Real3 epm_table(const Operator &rho, const TimeSlice &slice);
/// Experimental wTPM composition for a pure state; complement errors propagate.
Table3 wtpm_table(const StateVector &psi, const TimeSlice &slice, const EnergyBasis &basis0);
/// Tr[U rho_NS,i U^dag Xi_f] with rho_NS,i = Pi_i rho Pi_i + (I - Pi_i) rho (I - Pi_i).
Table3 wtpm_direct(const Operator &rho, const TimeSlice &slice, const EnergyBasis &basis0);

/// Weights in z = tpm * p_tpm - half * (p_wtpm - p_end). Non-default values
/// exist only to check that tests notice a broken reconstruction.
struct ReconstructionCoefficients {
    double tpm = 1.0;
    double half = 0.5;
};

MhqTable mhq_reconstruct(const SchemeTables &tables, const ReconstructionCoefficients &coeffs = {});

/// q_{if} = Tr[rho Pi_i(0) U^dag Xi_f(t) U].
KdqTable kdq_direct(const Operator &rho, const TimeSlice &slice, const EnergyBasis &basis0);
KdqTable kdq_direct(const Operator &rho, double t, const DriveParams &params);

/// Special-unitary gate R with R Xi R^dag = |0><0| (|0> = m_S = 0). Built from a
/// Householder reflection followed by a global phase fixing det R = 1.
Operator gate_to_zero(const Operator &xi);

struct ProtocolScheme {
    enum class Kind { End, Tpm, Wtpm };
    Kind kind = Kind::End;
    std::size_t i = 0;  // initial label for Tpm / Wtpm
};

/// Runs the gate-level protocol: prepare |0>, apply the preparation gate, evolve,
/// apply the readout gate for each f and read the |0> population. Returns the
/// END distribution, or row i of the TPM / wTPM joint table. With shots set,
/// each prepared state's distribution is replaced by multinomial frequencies.
Real3 run_protocol(const InitialStateSpec &spec, const ProtocolScheme &scheme, double t, const DriveParams &params,
                   std::optional<std::uint64_t> shots = std::nullopt, std::uint64_t seed = 0);

struct ShotCounts {
    std::array<std::uint64_t, 3> counts{};
    std::uint64_t shots = 0;
    Real3 frequencies() const;
};

/// Multinomial counts of `shots` draws from p. Throws InvalidDistribution.
ShotCounts sample_counts(const Real3 &p, std::uint64_t shots, std::uint64_t seed);
Real3 shot_noise_sample(const Real3 &p, std::uint64_t shots, std::uint64_t seed);

/// Multinomial: one run of `shots` repetitions per prepared state, binned by f.
/// PerProjector: an independent run of `shots` repetitions per (state, f),
/// each reading a single |0> population, so frequencies need not sum to 1.
enum class ReadoutModel { Multinomial, PerProjector };

/// Binomial frequency of `shots` trials with success probability p.
double binomial_frequency(double p, std::uint64_t shots, std::uint64_t seed);

/// Replaces every measured distribution by shot-noise frequencies. Each
/// prepared state uses its own substream of `seed`.
ConditionalProbabilities sample_conditionals(const ConditionalProbabilities &exact, std::uint64_t shots,
                                             std::uint64_t seed, ReadoutModel model = ReadoutModel::Multinomial);

/// Binomial standard deviation of each reconstructed z_{if} when every
/// conditional probability is estimated from `shots` repetitions. Holds for
/// either readout model since entries of different prepared states are independent.
Table3 predicted_z_stddev(const ConditionalProbabilities &cond, std::uint64_t shots);

}  // namespace mhq
