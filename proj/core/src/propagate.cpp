#include "mhq/propagate.hpp"

#include <algorithm>
#include <cmath>

#include "mhq/errors.hpp"
#include "mhq/random.hpp"

namespace mhq {

ClosedFormPropagator::ClosedFormPropagator(const DriveParams &params)
    : params_(params), rates_(frame_rates(params)), tilde_(herm_eig(hamiltonian_tilde(params))) {}

Operator ClosedFormPropagator::at(double t) const {
    Operator u = unitary_exp(tilde_, t);
    for (std::size_t r = 0; r < kDim; ++r) {
        const Complex phase = std::exp(-kJ * (t * rates_[r]));
        for (std::size_t c = 0; c < kDim; ++c) u(r, c) *= phase;
    }
    return u;
}

PropagatorResult propagator_closed(double t, const DriveParams &params) {
    return {t, ClosedFormPropagator(params).at(t), PropagatorMethod::Closed, 0};
}

PropagatorResult propagator_stepped(double t, const DriveParams &params, std::size_t n_steps) {
    if (n_steps == 0) throw InvalidParams("propagator_stepped: n_steps must be positive");
    params.validate();
    const double dt = t / static_cast<double>(n_steps);
    Operator u = Operator::identity(kDim);
    for (std::size_t k = 1; k <= n_steps; ++k) {
        const double tk = (static_cast<double>(k) - 0.5) * dt;
        u = unitary_exp(hamiltonian_rot(tk, params), dt) * u;
    }
    return {t, std::move(u), PropagatorMethod::Stepped, n_steps};
}

std::vector<PropagatorResult> propagator_stepped_grid(double t_end, const DriveParams &params, std::size_t n_steps,
                                                     std::size_t n_out) {
    if (n_steps == 0 || n_out == 0 || n_steps % n_out != 0)
        throw InvalidParams("propagator_stepped_grid: n_steps must be a positive multiple of n_out");
    params.validate();
    const double dt = t_end / static_cast<double>(n_steps);
    const std::size_t stride = n_steps / n_out;
    std::vector<PropagatorResult> out;
    out.reserve(n_out);
    Operator u = Operator::identity(kDim);
    for (std::size_t k = 1; k <= n_steps; ++k) {
        const double tk = (static_cast<double>(k) - 0.5) * dt;
        u = unitary_exp(hamiltonian_rot(tk, params), dt) * u;
        if (k % stride == 0)
            out.push_back({t_end * static_cast<double>(k / stride) / static_cast<double>(n_out), u,
                           PropagatorMethod::Stepped, k});
    }
    return out;
}

ClosedFormCheck validate_closed_form(const DriveParams &params, double t_max, std::size_t steps_per_t_max,
                                     std::uint64_t seed, double tolerance) {
    ClosedFormCheck check;
    check.tolerance = tolerance;
    check.ok = true;
    Rng rng(seed);
    const ClosedFormPropagator closed(params);
    for (std::size_t k = 0; k < check.times.size(); ++k) {
        // (0, t_max]
        const double t = t_max * (1.0 - rng.uniform());
        const auto steps = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(static_cast<double>(steps_per_t_max) * t / t_max)));
        const Operator diff = closed.at(t) - propagator_stepped(t, params, steps).u;
        check.times[k] = t;
        check.deviation[k] = frobenius_norm(diff);
        if (!(check.deviation[k] <= tolerance)) check.ok = false;
    }
    return check;
}

}  // namespace mhq
