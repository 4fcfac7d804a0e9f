#pragma once

#include <vector>

#include "drplab/linearization.hpp"
#include "drplab/sequences.hpp"
#include "drplab/signal.hpp"

namespace drp {

/// Dense matrix representation of the zero-initial-state pass-to-pass output
/// map on the hat-function basis of the grid: entry block (i, j) is the
/// node-i output response to a unit hat input at node j. Square of side
/// io_dim * nodes, strictly causal (upper blocks vanish).
struct LiftedOperator {
    TimeGrid grid{1.0, 1};
    Index io_dim = 0;
    Matrix matrix;
};

/// Max modulus over all eigenvalues (dense solve). Throws NumericalError on
/// eigensolver non-convergence.
double spectral_radius(const Matrix& m);

enum class StabilityVerdict { certified_stable, not_certified };

/// The pointwise spectral-radius certificate: alpha = max_t rho(D(t)).
/// alpha < 1 certifies exponential stability of the process.
struct StabilityCertificate {
    double alpha = 0.0;
    std::vector<double> per_time_rho;
    double margin = 1.0;  // 1 - alpha
    StabilityVerdict verdict = StabilityVerdict::certified_stable;
    Index argmax_node = 0;

    bool certified() const { return verdict == StabilityVerdict::certified_stable; }
};

StabilityCertificate alpha_certificate(const LTVQuadruple& quad);

/// Builds the lifted operator column by column: column j*m + c is the
/// sampled response (zero initial state) to the unit hat input at node j,
/// component c, under the same RK4 + half-step interpolation rule as
/// integrate_pass. All columns are integrated in one matrix-valued sweep.
LiftedOperator build_lifted_G0(const LTVQuadruple& quad);

/// Natural response to initial conditions: column j is the sampled output
/// for chi(0) = e_j and zero input. io_dim*nodes x state_dim.
Matrix build_lifted_H(const LTVQuadruple& quad);

/// Largest absolute entry strictly above the block diagonal; zero for a
/// causal lifted operator up to integrator-stencil leakage.
double causality_defect(const LiftedOperator& op);

/// log(norm of G0^k) for k = 1..k_max under the induced inf norm, computed
/// by repeated dense multiplication with periodic renormalization so wildly
/// unstable operators do not overflow. -inf entries mark exactly nilpotent
/// powers.
std::vector<double> power_log_norms(const LiftedOperator& op, Index k_max);

/// Gelfand root sequence ||G0^k||^(1/k), k = 1..k_max; the final entry is
/// the spectral-radius estimate. Unstable overflow surfaces as +inf.
std::vector<double> gelfand_estimate(const LiftedOperator& op, Index k_max);

/// A pair (M, zeta) with ||G0^k|| <= M zeta^k certified for k = 0..k_max,
/// zeta halfway between the Gelfand estimate and 1. Only meaningful when
/// the estimate is < 1.
struct PowerEnvelope {
    double m_bar = 1.0;
    double zeta = 0.0;
};

PowerEnvelope fit_power_envelope(const LiftedOperator& op, Index k_max);

/// Pass-k outputs from the superposition formula
///   y_k = G0^k y0 + sum_{i=1..k} G0^{k-i} H x_i(0),
/// every operator application realized matrix-free by pass integration of
/// the quadruple. x0_seq item k-1 supplies x_k(0).
std::vector<Signal> superposition_solution(const LTVQuadruple& quad, const Signal& y0,
                                           const VectorSequence& x0_seq, Index passes);

struct KgGamma {
    double K_G;
    double gamma_G;
};

/// Exponential-stability constants for boundaries in e_lambda, built from a
/// certified power envelope: with lambda_bar = max(zeta, lambda),
///   K_G = m_bar * max(1, 2 h_norm / (1 - lambda_bar)),
///   gamma_G = (1 + lambda_bar) / 2.
KgGamma kg_gamma_bound(double m_bar, double zeta, double h_norm, double lambda);

}  // namespace drp
