#pragma once

#include <cstdint>
#include <vector>

#include "drplab/drp_system.hpp"
#include "drplab/pass_operator.hpp"
#include "drplab/signal.hpp"

namespace drp {

/// Sampled matrices (A, B, C, D) of a linear time-varying differential
/// process on a grid, one sample per node.
struct LTVQuadruple {
    TimeGrid grid{1.0, 1};
    std::vector<Matrix> A;  // n x n
    std::vector<Matrix> B;  // n x m
    std::vector<Matrix> C;  // m x n
    std::vector<Matrix> D;  // m x m

    Index state_dim() const { return A.empty() ? 0 : A.front().rows(); }
    Index io_dim() const { return D.empty() ? 0 : D.front().rows(); }

    /// n x n .. m x m samples interpolated linearly between nodes; exact at
    /// nodes and half-nodes up to rounding.
    Matrix A_at(double t) const;
    Matrix B_at(double t) const;
    Matrix C_at(double t) const;
    Matrix D_at(double t) const;
};

/// Constant-coefficient quadruple on a grid.
LTVQuadruple constant_quadruple(const TimeGrid& grid, Matrix A, Matrix B, Matrix C, Matrix D);

/// Quadruple sampled from matrix-valued functions of time.
LTVQuadruple quadruple_from_functions(const TimeGrid& grid,
                                      const std::function<Matrix(double)>& A,
                                      const std::function<Matrix(double)>& B,
                                      const std::function<Matrix(double)>& C,
                                      const std::function<Matrix(double)>& D);

/// Jacobians of (f, g) at the origin on every grid node: analytic callbacks
/// when the system provides them, central finite differences otherwise.
/// Throws LinearizationError on a non-finite entry.
LTVQuadruple linearize_at_origin(const DRPSystem& sys);

/// The linear DRP defined by a quadruple, with analytic Jacobians attached.
DRPSystem make_ltv_system(const LTVQuadruple& quad);

/// Pointwise nonlinear residual of the linearization along a trajectory:
/// stacked (b, d) with b = f - (A chi + B u) and d = g - (C chi + D u),
/// a signal of dimension n + m.
Signal residual_phi(const DRPSystem& sys, const LTVQuadruple& quad, const Signal& chi,
                    const Signal& u);

struct ResidualLadderRow {
    double scale;
    double max_ratio;  // worst sup_norm(phi) / (sup_norm(u) + max_abs(chi0)) at this scale
};

/// Probes the residual at a decreasing ladder of boundary scales: for each
/// scale, seeded random (chi0, u) pairs inside the scale ball are integrated
/// and the worst residual-to-boundary ratio is recorded. Throws EscapeError
/// if probing escapes.
std::vector<ResidualLadderRow> check_residual_asymptotics(
    const DRPSystem& sys, const LTVQuadruple& quad, const std::vector<double>& scales,
    Index probes, std::uint64_t seed, const PassOptions& options = {});

/// True when successive ladder ratios never grow by more than `slack`
/// (the statistically robust reading of "non-increasing toward zero").
bool ladder_non_increasing(const std::vector<ResidualLadderRow>& rows, double slack = 2.0);

/// Central finite-difference Jacobians with per-coordinate step
/// max(1e-6, 1e-6 |x_j|); exposed for cross-checking analytic callbacks.
Matrix fd_jacobian_state(const StateMap& map, Index out_dim, const Vector& state,
                         const Vector& input, double t);
Matrix fd_jacobian_input(const StateMap& map, Index out_dim, const Vector& state,
                         const Vector& input, double t);

}  // namespace drp
