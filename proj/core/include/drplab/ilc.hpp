#pragma once

#include <optional>

#include "drplab/drp_engine.hpp"
#include "drplab/ltv_analysis.hpp"

namespace drp {

using UpdateLaw = std::function<Vector(const Vector& error, double t)>;
using UpdateJacobian = std::function<Matrix(const Vector& error, double t)>;
using LearningOutput = std::function<Vector(const Vector& state, const Vector& input, double t)>;
using LearningOutputJacobian =
    std::function<Matrix(const Vector& state, const Vector& input, double t)>;

/// A plant, a reference to track, and a static pass-to-pass update law
///   u_{k+1}(t) = Q(t) u_k(t) + l(e_k(t), t),  l(0, t) = 0.
///
/// When `psi` is set, the error fed to the update is the learning output
/// psi(x, u, t) - psi_des(t) instead of y - y_des (the device for plants of
/// higher relative degree, e.g. feeding the second output derivative). The
/// reported tracking error is always y - y_des.
struct ILCProblem {
    DRPSystem plant;
    Signal y_des;
    std::optional<Signal> u_star;  // feedforward achieving y_des (shift + certificate)
    Vector x_star0;                // reference initial state
    UpdateLaw update;
    UpdateJacobian update_jacobian;      // optional dl/de; finite differences otherwise
    LearningOutput psi;                  // optional learning output
    LearningOutputJacobian dpsi_dinput;  // optional dpsi/du
    std::optional<Signal> psi_des;       // required when psi is set
    std::function<Matrix(double)> q_filter;  // optional; identity when absent
};

/// Checks dimensions and that the update law vanishes at zero error on
/// every grid node (to 1e-12). Throws std::logic_error / invalid_argument.
void validate_ilc_problem(const ILCProblem& prob);

/// The update iteration folded into a single repetitive process in shifted
/// coordinates: pass state is the plant state deviation from the reference
/// trajectory, the carried profile is (learning error, input deviation),
/// dimension 2m. Requires u_star; the reference state trajectory is obtained
/// by running the plant at the reference.
DRPSystem compose_ilc(const ILCProblem& prob, const PassOptions& options = {});

/// Spectral certificate of the update law: per-node rho(I + L(t) D(t)) with
/// D the input Jacobian of the (learning) output along the reference and
/// L the update Jacobian at zero error, cross-checked against the stacked
/// block form [D; I][L, I].
struct ILCCertificate {
    std::vector<double> per_time_rho;
    std::vector<double> block_form_rho;
    double alpha = 0.0;
    StabilityVerdict verdict = StabilityVerdict::certified_stable;
    Index argmax_node = 0;

    bool certified() const { return verdict == StabilityVerdict::certified_stable; }
};

ILCCertificate ilc_certificate(const ILCProblem& prob, const PassOptions& options = {});

struct ILCRunRecord {
    std::vector<double> error_norms;           // ||e_k|| = ||y_k - y_des||, k = 0..K
    std::vector<double> learning_error_norms;  // ||theta_k||; equals error_norms without psi
    Signal final_input;                        // u_K
    std::optional<Index> escape_pass;
    std::optional<double> fitted_gamma;
    double boundary_scale = 0.0;
};

struct ILCRunOptions {
    std::optional<Signal> initial_input;  // u_0; zero when absent
    PassOptions pass;
};

/// Runs the composed process for `passes` updates. initial_states supplies
/// the per-pass plant initial conditions (unshifted, near x_star0), item k
/// belonging to pass k; it must hold passes+1 items. The pass-0 error is
/// always computed by running the plant with u_0, never taken as input.
ILCRunRecord run_ilc(const ILCProblem& prob, Index passes, const VectorSequence& initial_states,
                     const ILCRunOptions& options = {});

}  // namespace drp
