#include "mhq/app/selftest.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "mhq/analysis.hpp"
#include "mhq/errors.hpp"
#include "mhq/explore.hpp"
#include "mhq/propagate.hpp"
#include "mhq/random.hpp"

namespace mhq::app {

namespace {

// A check returns an empty string on success, otherwise what went wrong.
using Check = std::function<std::string()>;

Operator random_hermitian(Rng &rng, double scale) {
    Operator m(kDim);
    for (std::size_t r = 0; r < kDim; ++r) {
        m(r, r) = scale * rng.uniform(-1.0, 1.0);
        for (std::size_t c = r + 1; c < kDim; ++c) {
            m(r, c) = scale * Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

StateVector random_state(Rng &rng) {
    StateVector v(kDim);
    for (auto &z : v) z = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return normalized(v);
}

DriveParams random_drive(Rng &rng) {
    DriveParams p;
    p.omega1 = rng.uniform(3.0, 40.0);
    p.omega2 = rng.uniform(3.0, 40.0);
    p.phi1 = rng.uniform(-2.0, 2.0) * p.omega1;
    p.phi2 = rng.uniform(-2.0, 2.0) * p.omega2;
    return p;
}

double table_diff(const Table3 &a, const Table3 &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t f = 0; f < kDim; ++f) worst = std::max(worst, std::abs(a[i][f] - b[i][f]));
    return worst;
}

std::string eigensolver() {
    Rng rng(101);
    for (int n = 0; n < 200; ++n) {
        const Operator m = random_hermitian(rng, n % 2 ? 1.0 : 40.0);
        const EigenSystem e = herm_eig(m);
        Operator rebuilt(kDim);
        for (std::size_t k = 0; k < kDim; ++k) rebuilt += e.values[k] * outer(e.vectors[k], e.vectors[k]);
        const double scale = 1.0 + frobenius_norm(m);
        if (frobenius_norm(rebuilt - m) > 1e-10 * scale) return fmt::format("reconstruction failed at sample {}", n);
        for (std::size_t a = 0; a < kDim; ++a)
            for (std::size_t b = 0; b < kDim; ++b)
                if (std::abs(inner(e.vectors[a], e.vectors[b]) - (a == b ? 1.0 : 0.0)) > 1e-10)
                    return fmt::format("vectors not orthonormal at sample {}", n);
        if (!std::is_sorted(e.values.begin(), e.values.end())) return "values not ascending";
    }
    Operator bad = Operator::identity(kDim);
    bad(0, 2) = 1.0;
    try {
        herm_eig(bad);
        return "non-Hermitian input accepted";
    } catch (const NonHermitianInput &) {
    }
    return {};
}

std::string exponential() {
    Rng rng(102);
    for (int n = 0; n < 50; ++n) {
        const Operator h = random_hermitian(rng, 10.0);
        const double s = rng.uniform(-2.0, 2.0), r = rng.uniform(-2.0, 2.0);
        const Operator us = unitary_exp(h, s);
        if (!is_unitary(us)) return "exp(-jsH) not unitary";
        if (max_abs_diff(us * unitary_exp(h, r), unitary_exp(h, s + r)) > 1e-9) return "group law violated";
    }
    return {};
}

std::string energy_bases() {
    Rng rng(103);
    for (int n = 0; n < 100; ++n) {
        const DriveParams p = random_drive(rng);
        const double t = rng.uniform(0.0, 1.0);
        const EnergyBasis b = energy_basis(t, p);
        Operator sum(kDim);
        for (std::size_t k = 0; k < kDim; ++k) {
            if (!is_projector(b.projectors[k])) return "spectral projector not idempotent";
            sum += b.projectors[k];
        }
        if (max_abs_diff(sum, Operator::identity(kDim)) > 1e-10) return "projectors not complete";
        if (!(b.energies[0] > b.energies[1] && b.energies[1] > b.energies[2])) return "energies not descending";
    }
    const DriveParams eq = experimental_drive();
    const EnergyBasis b = energy_basis(0.123, eq);
    if (std::abs(b.energies[kPlus] - eq.omega1) > 1e-10 || std::abs(b.energies[kZero]) > 1e-10 ||
        std::abs(b.energies[kMinus] + eq.omega1) > 1e-10)
        return "equal-drive spectrum is not (Omega, 0, -Omega)";
    return {};
}

std::string initial_states() {
    Rng rng(104);
    for (int n = 0; n < 100; ++n) {
        const DriveParams p = random_drive(rng);
        const EnergyBasis b0 = energy_basis(0.0, p);
        const InitialStateSpec spec{{rng.uniform(), rng.uniform(), rng.uniform()},
                                    {rng.uniform(), rng.uniform(), rng.uniform()}};
        const Operator rho = initial_state(spec, b0);
        const Real3 pn = spec.populations();
        for (std::size_t i = 0; i < kDim; ++i)
            if (std::abs(trace_product(rho, b0.projectors[i]).real() - pn[i]) > 1e-10)
                return "projected population differs from the renormalized spec";
    }
    return {};
}

std::string propagators() {
    const ClosedFormCheck c = validate_closed_form(experimental_drive(), 0.2, 20000, 7, 1e-5);
    if (!c.ok) return fmt::format("experimental drive: deviation {:.3g}", c.deviation[0]);
    Rng rng(105);
    for (int n = 0; n < 5; ++n) {
        const DriveParams p = random_drive(rng);
        const ClosedFormCheck r = validate_closed_form(p, 0.2, 20000, 8 + n, 1e-5);
        if (!r.ok) return fmt::format("random drive {}: deviation above 1e-5", n);
    }
    const Operator u = propagator_closed(0.17, experimental_drive()).u;
    if (!is_unitary(u)) return "closed-form propagator not unitary";
    return {};
}

std::string reconstruction(const ReconstructionCoefficients &coeffs) {
    Rng rng(106);
    for (int n = 0; n < 200; ++n) {
        const DriveParams p = random_drive(rng);
        const StateVector psi = random_state(rng);
        const EnergyBasis b0 = energy_basis(0.0, p);
        const TimeSlice slice = make_slice(rng.uniform(0.0, 0.5), p);
        const MhqTable z = mhq_reconstruct(scheme_tables(psi, slice, b0), coeffs);
        const MhqTable ref = real_part(kdq_direct(outer(psi, psi), slice, b0));
        const double d = table_diff(z.z, ref.z);
        if (d > 1e-9) return fmt::format("sample {}: |z - Re q| = {:.3g}", n, d);
    }
    return {};
}

std::string marginals() {
    Rng rng(107);
    for (int n = 0; n < 100; ++n) {
        const DriveParams p = random_drive(rng);
        const StateVector psi = random_state(rng);
        const SchemeTables t = scheme_tables(psi, rng.uniform(0.0, 0.5), p);
        const MhqTable z = mhq_reconstruct(t);
        for (std::size_t k = 0; k < kDim; ++k) {
            double row = 0.0, col = 0.0;
            for (std::size_t j = 0; j < kDim; ++j) {
                row += z.z[k][j];
                col += z.z[j][k];
            }
            if (std::abs(row - t.p_init[k]) > 1e-10) return "row sum differs from p_i";
            if (std::abs(col - t.p_end[k]) > 1e-10) return "column sum differs from p_end";
        }
    }
    return {};
}

std::string protocol() {
    const DriveParams p = experimental_drive();
    const InitialStateSpec spec = experimental_state();
    const StateVector psi = initial_state_vector(spec, energy_basis(0.0, p));
    for (double t : {0.03, 0.1, 0.17}) {
        const SchemeTables ref = scheme_tables(psi, t, p);
        for (std::size_t i = 0; i < kDim; ++i) {
            const Real3 w = run_protocol(spec, {ProtocolScheme::Kind::Wtpm, i}, t, p);
            for (std::size_t f = 0; f < kDim; ++f)
                if (std::abs(w[f] - ref.p_wtpm[i][f]) > 1e-10) return "gate-level wTPM differs from composition";
        }
    }
    Rng rng(108);
    const Operator zero = outer(basis_vector(kDim, kMs0), basis_vector(kDim, kMs0));
    for (int n = 0; n < 50; ++n) {
        const StateVector v = random_state(rng);
        const Operator r = gate_to_zero(outer(v, v));
        if (max_abs_diff(r * outer(v, v) * adjoint(r), zero) > 1e-10) return "gate does not map onto |0><0|";
        if (std::abs(determinant(r) - 1.0) > 1e-10) return "gate determinant is not 1";
    }
    return {};
}

std::string work_and_bounds() {
    Rng rng(109);
    for (int n = 0; n < 200; ++n) {
        const DriveParams p = random_drive(rng);
        const StateVector psi = random_state(rng);
        const Operator rho = outer(psi, psi);
        const TimeSlice slice = make_slice(rng.uniform(0.0, 0.5), p);
        const MhqTable z = real_part(kdq_direct(rho, slice, energy_basis(0.0, p)));
        if (negativity(z) > kNegativityBound + 1e-9) return "negativity above sqrt(3) - 1";
        const double de = energy_change(rho, slice, p);
        if (std::abs(avg_work_mhq(z) - de) > 1e-9 * std::max(1.0, std::abs(de)))
            return "average work differs from the energy change";
    }
    return {};
}

std::string experimental_window() {
    const DriveParams p = experimental_drive();
    const EnergyBasis b0 = energy_basis(0.0, p);
    const StateVector psi = initial_state_vector(experimental_state(), b0);
    const ClosedFormPropagator prop(p);
    const double end = time_window(p);
    const std::size_t n = 200;
    std::vector<double> w, w_tpm, aleph;
    const double s_expected = (0.7654 + 0.0009) / 1.0001;
    for (double t : window_grid(end, n)) {
        const SchemeTables tables = scheme_tables(psi, make_slice(t, prop), b0);
        const MhqTable z = mhq_reconstruct(tables);
        w.push_back(avg_work_mhq(z));
        w_tpm.push_back(avg_work_tpm(tables));
        aleph.push_back(negativity(z));
        if (std::abs(s_stat(z.z) - s_expected) > 1e-10) return "s statistic is not constant";
    }
    const auto peak = std::max_element(aleph.begin(), aleph.end());
    if (std::abs(*peak - 0.248365039231) > 1e-9) return fmt::format("negativity peak {:.12g} moved", *peak);
    const ExtractionPeak e = extraction_peak(w, w_tpm);
    if (!e.ratio || std::abs(*e.ratio - 3.918673749996) > 1e-8) return "extraction ratio moved";
    const auto k = static_cast<std::size_t>(peak - aleph.begin());
    if ((e.index_w > k ? e.index_w - k : k - e.index_w) > 1) return "work minimum not at the negativity peak";
    return {};
}

std::string shot_noise() {
    const Real3 p{0.2, 0.5, 0.3};
    const ShotCounts a = sample_counts(p, 100000, 3), b = sample_counts(p, 100000, 3);
    if (a.counts != b.counts) return "sampling not reproducible";
    const Real3 f = shot_noise_sample(p, 100'000'000, 4);
    for (std::size_t k = 0; k < kDim; ++k)
        if (std::abs(f[k] - p[k]) > 1e-3) return "frequencies do not approach probabilities";
    return {};
}

std::string sweeps(unsigned threads) {
    SweepConfig cfg;
    cfg.n_sets = 6;
    cfg.n_time = 30;
    cfg.seed = 11;
    const SweepResult a = sweep(cfg, 1);
    const SweepResult b = sweep(cfg, std::max(2u, threads));
    if (a.records.size() != b.records.size()) return "record count depends on thread count";
    for (std::size_t k = 0; k < a.records.size(); ++k)
        if (a.records[k].original.min_w != b.records[k].original.min_w ||
            a.records[k].twins[1].max_aleph != b.records[k].twins[1].max_aleph)
            return "sweep output depends on thread count";
    if (a.summary.bound_violations != 0) return "sweep point above the negativity bound";
    if (a.summary.consistency_violations != 0) return "negative cell without positive negativity";
    return {};
}

}  // namespace

bool SelftestReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.ok; });
}

SelftestReport run_selftest(const SelftestOptions &options) {
    const std::vector<std::pair<std::string, Check>> checks{
        {"qmath.eigensolver", eigensolver},
        {"qmath.unitary_exp", exponential},
        {"model.energy_basis", energy_bases},
        {"model.initial_state", initial_states},
        {"propagate.closed_vs_stepped", propagators},
        {"schemes.reconstruction", [&] { return reconstruction(options.coefficients); }},
        {"schemes.marginals", marginals},
        {"schemes.protocol", protocol},
        {"schemes.shot_noise", shot_noise},
        {"analysis.work_and_bounds", work_and_bounds},
        {"analysis.experimental_window", experimental_window},
        {"explore.sweep", [&] { return sweeps(options.threads); }},
    };
    SelftestReport report;
    for (const auto &[name, check] : checks) {
        const auto start = std::chrono::steady_clock::now();
        CheckResult r{name, false, {}, 0.0};
        try {
            r.detail = check();
            r.ok = r.detail.empty();
        } catch (const std::exception &e) {
            r.detail = fmt::format("unexpected exception: {}", e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.checks.push_back(std::move(r));
    }
    return report;
}

}  // namespace mhq::app
