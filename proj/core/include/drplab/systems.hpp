#pragma once

#include <cstdint>

#include "drplab/ilc.hpp"
#include "drplab/linearization.hpp"

namespace drp {

/// Actuated Van der Pol oscillator in normal form with time-varying damping:
///   q1' = q2,  q2' = -q1 + damping(t) (1 - q1^2) q2 + u,  y = q1,
/// with analytic Jacobians. Origin-anchored; the unforced origin is unstable
/// for positive damping.
DRPSystem van_der_pol_drp(const TimeGrid& grid, std::function<double(double)> damping);

/// The damping profile of the worked tracking example: 4 + 0.5 sin(2 pi 10 t).
std::function<double(double)> tracking_example_damping();

/// Scalar LTI process x' = a x + b u, y = c x + d u as a DRPSystem.
DRPSystem scalar_lti_drp(const TimeGrid& grid, double a, double b, double c, double d);

/// Memoryless scalar process y = gain * u (one inert state keeps the
/// dimensions valid).
DRPSystem memoryless_scalar_drp(const TimeGrid& grid, double gain);

/// Scalar quadruple with A = B = C = 0 and D(t) = gain(t).
LTVQuadruple scalar_gain_quadruple(const TimeGrid& grid, const std::function<double(double)>& gain);
LTVQuadruple scalar_gain_quadruple(const TimeGrid& grid, double gain);

/// Seeded smooth random quadruple with sinusoidally varying coefficients,
/// D rescaled so that max_t rho(D(t)) equals alpha_target exactly.
LTVQuadruple random_quadruple(const TimeGrid& grid, Index state_dim, Index io_dim,
                              double alpha_target, Rng& rng, double coupling = 0.5);

/// Adds seeded cubic perturbations (coordinate cubes of state and input) to
/// both maps. The origin linearization is unchanged; the analytic Jacobian
/// callbacks are dropped so linearization falls back to finite differences.
DRPSystem with_cubic_perturbation(const DRPSystem& base, double strength, std::uint64_t seed);

/// The worked ILC example: Van der Pol tracking y_des(t) = 0.1 cos(2 pi t)
/// on [0, 2] with the second-derivative update u_{k+1} = u_k - (ydd_k -
/// ydd_des). The feedforward u* and the learning target are analytic; the
/// per-pass initial conditions converge to (0.1, 0) at a seeded random rate
/// lambda ~ U[0.2, 0.95] with e_lambda norm exactly 0.09.
struct TrackingExample {
    ILCProblem problem;
    VectorSequence initial_states;  // passes+1 items, item k for pass k
    double ic_lambda = 0.0;         // the drawn convergence rate
};

TrackingExample make_tracking_example(Index grid_intervals, Index passes, std::uint64_t seed);

}  // namespace drp
