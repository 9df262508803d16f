#pragma once

// Unitary U(t) generated by the rotating-frame H(t), computed two ways.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mhq/model.hpp"
#include "mhq/qmath.hpp"

namespace mhq {

enum class PropagatorMethod { Closed, Stepped };

struct PropagatorResult {
    double t = 0.0;
    Operator u;
    PropagatorMethod method = PropagatorMethod::Closed;
    std::size_t n_steps = 0;  // stepped only
};

/// U(t) = exp(-jtD) exp(-jt H~), with D = diag(phi1, 0, phi2). The eigensystem
/// of H~ is computed once, so evaluating many times is cheap.
class ClosedFormPropagator {
  public:
    explicit ClosedFormPropagator(const DriveParams &params);

    Operator at(double t) const;
    const DriveParams &params() const { return params_; }

  private:
    DriveParams params_;
    Real3 rates_;
    EigenSystem tilde_;
};

PropagatorResult propagator_closed(double t, const DriveParams &params);

/// Time-ordered product of exp(-j dt H(t_k)) at midpoints t_k = (k - 1/2) dt.
PropagatorResult propagator_stepped(double t, const DriveParams &params, std::size_t n_steps);

/// One midpoint run to t_end with n_steps steps, recording U at t_end * k / n_out
/// for k = 1..n_out. n_steps must be a multiple of n_out.
std::vector<PropagatorResult> propagator_stepped_grid(double t_end, const DriveParams &params, std::size_t n_steps,
                                                     std::size_t n_out);

struct ClosedFormCheck {
    std::array<double, 3> times{};
    std::array<double, 3> deviation{};  // Frobenius distance closed vs stepped
    double tolerance = 0.0;
    bool ok = false;
};

/// Compares the closed form with the stepped product at three seeded random
/// times in (0, t_max]; the stepped run uses steps_per_t_max * t / t_max steps.
ClosedFormCheck validate_closed_form(const DriveParams &params, double t_max, std::size_t steps_per_t_max,
                                     std::uint64_t seed, double tolerance);

}  // namespace mhq
