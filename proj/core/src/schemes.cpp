#include "mhq/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mhq/errors.hpp"
#include "mhq/random.hpp"
#include "mhq/tolerances.hpp"

namespace mhq {

namespace {

void require_unit(const StateVector &psi, const char *what) {
    if (psi.size() != kDim) throw DimensionMismatch(std::string(what) + ": state must have dimension 3");
    if (std::abs(norm(psi) - 1.0) > tol::state_norm) throw UnnormalizedState(std::string(what) + ": |psi| != 1");
}

// Born probabilities of U|psi> in the final energy basis.
Real3 born(const StateVector &psi, const TimeSlice &slice) {
    const StateVector evolved = slice.u * psi;
    Real3 p{};
    for (std::size_t f = 0; f < kDim; ++f) p[f] = std::norm(inner(slice.final_basis.vectors[f], evolved));
    return p;
}

// Tr[U rho U^dag Xi_f] for every f.
Real3 born(const Operator &rho, const TimeSlice &slice) {
    const Operator evolved = slice.u * rho * adjoint(slice.u);
    Real3 p{};
    for (std::size_t f = 0; f < kDim; ++f) p[f] = trace_product(evolved, slice.final_basis.projectors[f]).real();
    return p;
}

Real3 populations(const StateVector &psi, const EnergyBasis &basis0) {
    Real3 p{};
    for (std::size_t i = 0; i < kDim; ++i) p[i] = std::norm(inner(basis0.vectors[i], psi));
    return p;
}

}  // namespace

TimeSlice make_slice(double t, const ClosedFormPropagator &propagator) {
    return {t, propagator.at(t), energy_basis(t, propagator.params())};
}

TimeSlice make_slice(double t, const DriveParams &params) { return make_slice(t, ClosedFormPropagator(params)); }

MhqTable real_part(const KdqTable &kdq) {
    MhqTable out{kdq.t, {}, kdq.e_init, kdq.e_final};
    for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t f = 0; f < kDim; ++f) out.z[i][f] = kdq.q[i][f].real();
    return out;
}

Real3 conditional_prob(const StateVector &psi, const TimeSlice &slice) {
    require_unit(psi, "conditional_prob");
    return born(psi, slice);
}

Real3 conditional_prob(const StateVector &psi, double t, const DriveParams &params) {
    return conditional_prob(psi, make_slice(t, params));
}

StateVector complement_state(const StateVector &psi, std::size_t i, const EnergyBasis &basis0) {
    require_unit(psi, "complement_state");
    const Complex overlap = inner(basis0.vectors.at(i), psi);
    const double p_i = std::norm(overlap);
    if (p_i > 1.0 - tol::complement_limit)
        throw DegenerateComplement("complement_state: p_" + std::string(kLabelNames[i]) + " ~ 1");
    StateVector out = psi;
    for (std::size_t r = 0; r < kDim; ++r) out[r] -= overlap * basis0.vectors[i][r];
    return normalized(std::move(out));
}

ConditionalProbabilities measure_conditionals(const StateVector &psi, const TimeSlice &slice,
                                              const EnergyBasis &basis0) {
    require_unit(psi, "measure_conditionals");
    ConditionalProbabilities out;
    out.t = slice.t;
    out.p_init = populations(psi, basis0);
    out.p_end = born(psi, slice);
    out.e_init = basis0.energies;
    out.e_final = slice.final_basis.energies;
    for (std::size_t i = 0; i < kDim; ++i) {
        out.given_i[i] = born(basis0.vectors[i], slice);
        if (out.p_init[i] <= 1.0 - tol::complement_limit)
            out.given_not_i[i] = born(complement_state(psi, i, basis0), slice);
    }
    return out;
}

SchemeTables compose_tables(const ConditionalProbabilities &cond) {
    SchemeTables out;
    out.t = cond.t;
    out.p_init = cond.p_init;
    out.p_end = cond.p_end;
    out.e_init = cond.e_init;
    out.e_final = cond.e_final;
    for (std::size_t i = 0; i < kDim; ++i) {
        const double p_i = cond.p_init[i];
        for (std::size_t f = 0; f < kDim; ++f) {
            out.p_tpm[i][f] = p_i * cond.given_i[i][f];
            out.p_wtpm[i][f] = p_i * cond.given_i[i][f] + (1.0 - p_i) * cond.given_not_i[i][f];
        }
    }
    return out;
}

SchemeTables scheme_tables(const StateVector &psi, const TimeSlice &slice, const EnergyBasis &basis0) {
    return compose_tables(measure_conditionals(psi, slice, basis0));
}

SchemeTables scheme_tables(const StateVector &psi, double t, const DriveParams &params) {
    return scheme_tables(psi, make_slice(t, params), energy_basis(0.0, params));
}

Table3 tpm_table(const Operator &rho, const TimeSlice &slice, const EnergyBasis &basis0) {
    Table3 out{};
    for (std::size_t i = 0; i < kDim; ++i) {
        const Operator &pi = basis0.projectors[i];
        out[i] = born(pi * rho * pi, slice);
    }
    return out;
}

Real3 epm_table(const Operator &rho, const TimeSlice &slice) { return born(rho, slice); }

Table3 wtpm_table(const StateVector &psi, const TimeSlice &slice, const EnergyBasis &basis0) {
    const Real3 p = populations(psi, basis0);
    Table3 out{};
    for (std::size_t i = 0; i < kDim; ++i) {
        const Real3 given = born(basis0.vectors[i], slice);
        const Real3 given_bar = born(complement_state(psi, i, basis0), slice);
        for (std::size_t f = 0; f < kDim; ++f) out[i][f] = p[i] * given[f] + (1.0 - p[i]) * given_bar[f];
    }
    return out;
}

Table3 wtpm_direct(const Operator &rho, const TimeSlice &slice, const EnergyBasis &basis0) {
    const Operator id = Operator::identity(kDim);
    Table3 out{};
    for (std::size_t i = 0; i < kDim; ++i) {
        const Operator &pi = basis0.projectors[i];
        const Operator rest = id - pi;
        out[i] = born(pi * rho * pi + rest * rho * rest, slice);
    }
    return out;
}

MhqTable mhq_reconstruct(const SchemeTables &tables, const ReconstructionCoefficients &coeffs) {
    MhqTable out{tables.t, {}, tables.e_init, tables.e_final};
    for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t f = 0; f < kDim; ++f)
            out.z[i][f] = coeffs.tpm * tables.p_tpm[i][f] - coeffs.half * (tables.p_wtpm[i][f] - tables.p_end[f]);
    return out;
}

KdqTable kdq_direct(const Operator &rho, const TimeSlice &slice, const EnergyBasis &basis0) {
    // q_if = conj(<E_f|U|e_i>) <E_f|U rho|e_i>
    const Operator u_rho = slice.u * rho;
    KdqTable out{slice.t, {}, basis0.energies, slice.final_basis.energies};
    for (std::size_t i = 0; i < kDim; ++i) {
        const StateVector &ei = basis0.vectors[i];
        const StateVector a = slice.u * ei;
        const StateVector b = u_rho * ei;
        for (std::size_t f = 0; f < kDim; ++f) {
            const StateVector &ef = slice.final_basis.vectors[f];
            out.q[i][f] = std::conj(inner(ef, a)) * inner(ef, b);
        }
    }
    return out;
}

KdqTable kdq_direct(const Operator &rho, double t, const DriveParams &params) {
    return kdq_direct(rho, make_slice(t, params), energy_basis(0.0, params));
}

Operator gate_to_zero(const Operator &xi) {
    if (xi.dim() != kDim) throw DimensionMismatch("gate_to_zero: expected a 3x3 projector");
    if (!is_hermitian(xi) || std::abs(trace(xi).real() - 1.0) > tol::rank_one ||
        max_abs_diff(xi * xi, xi) > tol::rank_one)
        throw NotRankOne("gate_to_zero: input is not a rank-1 projector");

    std::size_t col = 0;
    for (std::size_t c = 1; c < kDim; ++c)
        if (xi(c, c).real() > xi(col, col).real()) col = c;
    StateVector v(kDim);
    for (std::size_t r = 0; r < kDim; ++r) v[r] = xi(r, col);
    v = normalized(std::move(v));

    // Householder reflection I - 2 w w^dag / |w|^2 sends v to e^{j beta}|0>.
    const Complex v0 = v[kMs0];
    const Complex phase = std::abs(v0) > 0.0 ? v0 / std::abs(v0) : Complex{1.0};
    StateVector w = v;
    w[kMs0] -= phase;
    const double w2 = std::norm(w[0]) + std::norm(w[1]) + std::norm(w[2]);
    if (w2 < tol::rank_one * tol::rank_one) return Operator::identity(kDim);

    Operator h = Operator::identity(kDim);
    h -= (2.0 / w2) * outer(w, w);
    const Complex det = determinant(h);
    return std::exp(-kJ * (std::arg(det) / static_cast<double>(kDim))) * h;
}

Real3 run_protocol(const InitialStateSpec &spec, const ProtocolScheme &scheme, double t, const DriveParams &params,
                   std::optional<std::uint64_t> shots, std::uint64_t seed) {
    const EnergyBasis basis0 = energy_basis(0.0, params);
    const StateVector xi = initial_state_vector(spec, basis0);
    const TimeSlice slice = make_slice(t, params);

    std::array<Operator, 3> readout;
    for (std::size_t f = 0; f < kDim; ++f) readout[f] = gate_to_zero(slice.final_basis.projectors[f]);
    const StateVector ground = basis_vector(kDim, kMs0);

    std::uint64_t stream = 0;
    auto measure = [&](const StateVector &target) {
        const Operator prep = gate_to_zero(outer(target, target));
        const StateVector evolved = slice.u * (adjoint(prep) * ground);
        Real3 p{};
        for (std::size_t f = 0; f < kDim; ++f) p[f] = std::norm((readout[f] * evolved)[kMs0]);
        if (shots) p = shot_noise_sample(p, *shots, substream_seed(seed, stream));
        ++stream;
        return p;
    };

    if (scheme.kind == ProtocolScheme::Kind::End) return measure(xi);

    const std::size_t i = scheme.i;
    if (i >= kDim) throw UnsupportedIndex("run_protocol: label index out of range");
    const double p_i = std::norm(inner(basis0.vectors[i], xi));
    const Real3 given = measure(basis0.vectors[i]);
    Real3 out{};
    for (std::size_t f = 0; f < kDim; ++f) out[f] = p_i * given[f];
    if (scheme.kind == ProtocolScheme::Kind::Wtpm) {
        const Real3 given_bar = measure(complement_state(xi, i, basis0));
        for (std::size_t f = 0; f < kDim; ++f) out[f] += (1.0 - p_i) * given_bar[f];
    }
    return out;
}

Real3 ShotCounts::frequencies() const {
    Real3 out{};
    for (std::size_t k = 0; k < 3; ++k) out[k] = static_cast<double>(counts[k]) / static_cast<double>(shots);
    return out;
}

ShotCounts sample_counts(const Real3 &p, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw InvalidDistribution("shot_noise_sample: shots must be positive");
    double sum = 0.0;
    for (double x : p) {
        if (!std::isfinite(x) || x < -tol::distribution_entry || x > 1.0 + tol::distribution_entry)
            throw InvalidDistribution("shot_noise_sample: entry outside [0, 1]");
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol::distribution_sum)
        throw InvalidDistribution("shot_noise_sample: probabilities do not sum to 1");

    Rng rng(seed);
    ShotCounts out;
    out.shots = shots;
    std::uint64_t remaining = shots;
    double mass = 1.0;
    for (std::size_t k = 0; k + 1 < 3; ++k) {
        const double pk = std::clamp(p[k], 0.0, 1.0);
        const double cond = mass > 0.0 ? std::clamp(pk / mass, 0.0, 1.0) : 0.0;
        std::uint64_t draw = 0;
        if (remaining > 0 && cond >= 1.0) {
            draw = remaining;
        } else if (remaining > 0 && cond > 0.0) {
            std::binomial_distribution<std::uint64_t> binom(remaining, cond);
            draw = binom(rng.engine());
        }
        out.counts[k] = draw;
        remaining -= draw;
        mass -= pk;
    }
    out.counts[2] = remaining;
    return out;
}

Real3 shot_noise_sample(const Real3 &p, std::uint64_t shots, std::uint64_t seed) {
    return sample_counts(p, shots, seed).frequencies();
}

double binomial_frequency(double p, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw InvalidDistribution("binomial_frequency: shots must be positive");
    if (!std::isfinite(p) || p < -tol::distribution_entry || p > 1.0 + tol::distribution_entry)
        throw InvalidDistribution("binomial_frequency: probability outside [0, 1]");
    Rng rng(seed);
    std::binomial_distribution<std::uint64_t> binom(shots, std::clamp(p, 0.0, 1.0));
    return static_cast<double>(binom(rng.engine())) / static_cast<double>(shots);
}

ConditionalProbabilities sample_conditionals(const ConditionalProbabilities &exact, std::uint64_t shots,
                                             std::uint64_t seed, ReadoutModel model) {
    ConditionalProbabilities out = exact;
    auto sample = [&](Real3 &dist, std::uint64_t stream) {
        if (dist[0] + dist[1] + dist[2] == 0.0) return;  // unmeasured complement
        const std::uint64_t sub = substream_seed(seed, stream);
        if (model == ReadoutModel::Multinomial) {
            dist = shot_noise_sample(dist, shots, sub);
        } else {
            for (std::size_t f = 0; f < kDim; ++f) dist[f] = binomial_frequency(dist[f], shots, substream_seed(sub, f));
        }
    };
    sample(out.p_end, 0);
    for (std::size_t i = 0; i < kDim; ++i) {
        sample(out.given_i[i], 1 + i);
        sample(out.given_not_i[i], 4 + i);
    }
    return out;
}

Table3 predicted_z_stddev(const ConditionalProbabilities &cond, std::uint64_t shots) {
    const double n = static_cast<double>(shots);
    auto var = [n](double x) { return std::max(0.0, x * (1.0 - x)) / n; };
    Table3 out{};
    for (std::size_t i = 0; i < kDim; ++i) {
        const double p_i = cond.p_init[i];
        for (std::size_t f = 0; f < kDim; ++f) {
            const double v = p_i * p_i * var(cond.given_i[i][f]) +
                             (1.0 - p_i) * (1.0 - p_i) * var(cond.given_not_i[i][f]) + var(cond.p_end[f]);
            out[i][f] = 0.5 * std::sqrt(v);
        }
    }
    return out;
}

}  // namespace mhq
