#pragma once

#include <functional>

#include "drplab/time_grid.hpp"
#include "drplab/types.hpp"

namespace drp {

using StateMap = std::function<Vector(const Vector& state, const Vector& input, double t)>;
using OutputMap = std::function<Vector(const Vector& state, const Vector& input, double t)>;
using JacobianMap = std::function<Matrix(const Vector& state, const Vector& input, double t)>;

/// The pair (f, g) of a differential repetitive process together with its
/// dimensions and grid: one pass integrates chi' = f(chi, u, t) and reads
/// out w = g(chi, u, t) over [0, T].
///
/// Jacobian callbacks are optional; linearization falls back to central
/// finite differences where they are absent. origin_anchored declares that
/// f and g vanish at (0, 0, t); validate_origin_anchor checks it.
struct DRPSystem {
    StateMap f;
    OutputMap g;
    Index state_dim = 0;
    Index io_dim = 0;
    TimeGrid grid{1.0, 1};

    JacobianMap df_dstate;  // n x n
    JacobianMap df_dinput;  // n x m
    JacobianMap dg_dstate;  // m x n
    JacobianMap dg_dinput;  // m x m

    bool origin_anchored = true;

    bool has_analytic_jacobians() const {
        return df_dstate && df_dinput && dg_dstate && dg_dinput;
    }
};

/// Checks f(0,0,t_i) and g(0,0,t_i) vanish to 1e-12 at every grid node.
/// Throws std::logic_error naming the first offending node.
void validate_origin_anchor(const DRPSystem& sys);

}  // namespace drp
