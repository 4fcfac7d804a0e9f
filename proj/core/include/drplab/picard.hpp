#pragma once

#include <optional>

#include "drplab/drp_engine.hpp"

namespace drp {

using OdeField = std::function<Vector(const Vector& state, double t)>;
using OdeJacobian = std::function<Matrix(const Vector& state, double t)>;

/// Fixed-point iteration data for x' = f(x, t), x(0) = x_star0, carrying an
/// independently computed reference solution (fine-grid RK4, downsampled).
struct PicardProblem {
    OdeField field;
    OdeJacobian field_jacobian;  // optional
    Vector x_star0;
    TimeGrid grid{1.0, 1};
    Signal reference_solution;
};

/// Builds the problem and its reference solution; `refine` is the grid
/// refinement factor of the reference integration. Throws EscapeError if
/// the reference trajectory is non-finite.
PicardProblem make_picard_problem(OdeField field, OdeJacobian field_jacobian, Vector x_star0,
                                  const TimeGrid& grid, Index refine = 10);

/// RK4 solution of the plain ODE on a `refine`-times finer grid, sampled
/// back onto `grid`. The oracle used for reference solutions.
Signal integrate_ode(const OdeField& field, const Vector& x0, const TimeGrid& grid,
                     Index refine = 1);

/// The successive-approximation recursion as a repetitive process in
/// coordinates shifted by the reference solution: each pass integrates the
/// field along the previous iterate, so the origin is the fixed point.
DRPSystem picard_drp(const PicardProblem& prob);

struct PicardRunOptions {
    std::optional<Signal> initial_iterate;  // y_0; constant x_star0 when absent
    PassOptions pass;
};

/// Runs `passes` iterations with per-pass initial conditions from x0_seq
/// (unshifted, converging to x_star0 for a convergent scheme). The record's
/// output norms are the iterate errors ||y_k - x*||.
RunRecord run_picard(const PicardProblem& prob, Index passes, const VectorSequence& x0_seq,
                     const PicardRunOptions& options = {});

}  // namespace drp
