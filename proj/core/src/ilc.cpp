#include "drplab/ilc.hpp"

#include <stdexcept>

#include "drplab/errors.hpp"

namespace drp {

namespace {

Matrix identity_filter(Index m) { return Matrix::Identity(m, m); }

/// Reference data shared by the composed maps: the state trajectory under
/// u_star and the sampled targets.
struct ReferenceTrack {
    Signal state;   // x*(t), dim n
    Signal input;   // u*(t), dim m
    Signal target;  // psi_des or y_des, dim m
};

ReferenceTrack build_reference(const ILCProblem& prob, const PassOptions& options) {
    if (!prob.u_star)
        throw std::invalid_argument("ILC: the reference feedforward u_star is required here");
    if (prob.psi && !prob.psi_des)
        throw std::invalid_argument("ILC: psi_des is required when psi is set");
    const PassResult pass =
        require_no_escape(integrate_pass(prob.plant, prob.x_star0, *prob.u_star, options));
    return {pass.state, *prob.u_star, prob.psi ? *prob.psi_des : prob.y_des};
}

Matrix update_jacobian_at_zero(const ILCProblem& prob, double t) {
    const Index m = prob.plant.io_dim;
    const Vector zero_error = Vector::Zero(m);
    if (prob.update_jacobian) return prob.update_jacobian(zero_error, t);
    const Vector dummy_state = Vector::Zero(1);
    return fd_jacobian_input(
        [&prob](const Vector&, const Vector& error, double time) {
            return prob.update(error, time);
        },
        m, dummy_state, zero_error, t);
}

}  // namespace

void validate_ilc_problem(const ILCProblem& prob) {
    const Index m = prob.plant.io_dim;
    if (prob.y_des.dim() != m || !(prob.y_des.grid() == prob.plant.grid))
        throw std::invalid_argument("ILC: y_des must match the plant output on the plant grid");
    if (prob.x_star0.size() != prob.plant.state_dim)
        throw std::invalid_argument("ILC: x_star0 dimension mismatch");
    if (prob.u_star && (prob.u_star->dim() != m || !(prob.u_star->grid() == prob.plant.grid)))
        throw std::invalid_argument("ILC: u_star dimension or grid mismatch");
    if (prob.psi && !prob.psi_des)
        throw std::invalid_argument("ILC: psi_des is required when psi is set");
    if (!prob.update) throw std::invalid_argument("ILC: missing update law");

    const Vector zero_error = Vector::Zero(m);
    for (Index i = 0; i < prob.plant.grid.nodes(); ++i) {
        const double t = prob.plant.grid.node(i);
        if (max_abs(prob.update(zero_error, t)) > 1e-12)
            throw std::logic_error("ILC: update law does not vanish at zero error, node " +
                                   std::to_string(i));
    }
}

DRPSystem compose_ilc(const ILCProblem& prob, const PassOptions& options) {
    validate_ilc_problem(prob);
    const ReferenceTrack ref = build_reference(prob, options);

    const Index n = prob.plant.state_dim;
    const Index m = prob.plant.io_dim;
    const StateMap plant_f = prob.plant.f;
    const OutputMap plant_g = prob.plant.g;
    const LearningOutput psi = prob.psi;
    const UpdateLaw update = prob.update;
    const auto q_filter = prob.q_filter;

    // Plant input applied on the next pass, given the carried profile
    // (theta, v) at time t: Q(t) v + l(theta, t) + u*(t).
    auto next_input = [update, q_filter, m](const Vector& profile, const Vector& u_ref,
                                            double t) -> Vector {
        const Vector theta = profile.head(m);
        const Vector v = profile.tail(m);
        const Vector filtered = q_filter ? Vector(q_filter(t) * v) : v;
        return filtered + update(theta, t) + u_ref;
    };

    DRPSystem composed;
    composed.grid = prob.plant.grid;
    composed.state_dim = n;
    composed.io_dim = 2 * m;
    composed.origin_anchored = true;

    composed.f = [plant_f, ref, next_input](const Vector& chi, const Vector& profile,
                                            double t) -> Vector {
        const Vector x_ref = interpolate(ref.state, t);
        const Vector u_ref = interpolate(ref.input, t);
        // d/dt x*(t) evaluated as f(x*, u*, t): exact on the reference, so
        // the composed field vanishes identically at the origin.
        return plant_f(chi + x_ref, next_input(profile, u_ref, t), t) - plant_f(x_ref, u_ref, t);
    };

    composed.g = [plant_g, psi, ref, next_input, update, q_filter, m](
                     const Vector& chi, const Vector& profile, double t) -> Vector {
        const Vector x_ref = interpolate(ref.state, t);
        const Vector u_ref = interpolate(ref.input, t);
        const Vector u_next = next_input(profile, u_ref, t);
        Vector out(2 * m);
        if (psi)
            out.head(m) = psi(chi + x_ref, u_next, t) - interpolate(ref.target, t);
        else
            out.head(m) = plant_g(chi + x_ref, u_next, t) - interpolate(ref.target, t);
        const Vector v = profile.tail(m);
        out.tail(m) = (q_filter ? Vector(q_filter(t) * v) : v) + update(profile.head(m), t);
        return out;
    };
    return composed;
}

ILCCertificate ilc_certificate(const ILCProblem& prob, const PassOptions& options) {
    validate_ilc_problem(prob);
    const ReferenceTrack ref = build_reference(prob, options);
    const Index m = prob.plant.io_dim;

    ILCCertificate cert;
    cert.per_time_rho.reserve(prob.plant.grid.nodes());
    cert.block_form_rho.reserve(prob.plant.grid.nodes());

    for (Index i = 0; i < prob.plant.grid.nodes(); ++i) {
        const double t = prob.plant.grid.node(i);
        const Vector x_ref = ref.state.sample(i);
        const Vector u_ref = ref.input.sample(i);

        Matrix D;
        if (prob.psi)
            D = prob.dpsi_dinput ? prob.dpsi_dinput(x_ref, u_ref, t)
                                 : fd_jacobian_input(prob.psi, m, x_ref, u_ref, t);
        else
            D = prob.plant.dg_dinput ? prob.plant.dg_dinput(x_ref, u_ref, t)
                                     : fd_jacobian_input(prob.plant.g, m, x_ref, u_ref, t);
        const Matrix L = update_jacobian_at_zero(prob, t);

        const double rho_direct = spectral_radius(Matrix::Identity(m, m) + L * D);

        Matrix block(2 * m, 2 * m);
        block.topLeftCorner(m, m) = D * L;
        block.topRightCorner(m, m) = D;
        block.bottomLeftCorner(m, m) = L;
        block.bottomRightCorner(m, m) = identity_filter(m);
        const double rho_block = spectral_radius(block);

        cert.per_time_rho.push_back(rho_direct);
        cert.block_form_rho.push_back(rho_block);
        if (rho_direct > cert.alpha) {
            cert.alpha = rho_direct;
            cert.argmax_node = i;
        }
    }
    cert.verdict =
        cert.alpha < 1.0 ? StabilityVerdict::certified_stable : StabilityVerdict::not_certified;
    return cert;
}

ILCRunRecord run_ilc(const ILCProblem& prob, Index passes, const VectorSequence& initial_states,
                     const ILCRunOptions& options) {
    if (passes < 1) throw std::domain_error("run_ilc: need at least one pass");
    if (initial_states.size() < passes + 1)
        throw std::invalid_argument("run_ilc: need passes+1 initial states (pass 0 included)");
    if (initial_states.dim() != prob.plant.state_dim)
        throw std::invalid_argument("run_ilc: initial-state dimension mismatch");

    const DRPSystem composed = compose_ilc(prob, options.pass);
    const ReferenceTrack ref = build_reference(prob, options.pass);
    const Index m = prob.plant.io_dim;

    // Pass 0: the profile boundary (theta_0, v_0) is produced by actually
    // running the plant with u_0; it is never accepted as input.
    const Signal u0 =
        options.initial_input ? *options.initial_input : Signal(prob.plant.grid, m);
    ILCRunRecord record{{}, {}, u0, {}, {}, 0.0};
    const PassResult pass0 =
        integrate_pass(prob.plant, initial_states.item(0), u0, options.pass);
    if (pass0.escaped) {
        record.escape_pass = 0;
        return record;
    }

    Signal theta0(prob.plant.grid, m);
    if (prob.psi) {
        for (Index i = 0; i < prob.plant.grid.nodes(); ++i)
            theta0.set_sample(i, prob.psi(pass0.state.sample(i), u0.sample(i),
                                          prob.plant.grid.node(i)) -
                                     prob.psi_des->sample(i));
    } else {
        theta0 = pass0.output - prob.y_des;
    }
    const Signal e0 = pass0.output - prob.y_des;
    record.error_norms.push_back(sup_norm(e0));
    record.learning_error_norms.push_back(sup_norm(theta0));

    BoundarySpec boundary{vstack(theta0, u0 - ref.input),
                          initial_states.drop(1).translated(-prob.x_star0)};
    record.boundary_scale = boundary.scale();

    const OutputMap plant_g = prob.plant.g;
    RunOptions run_options;
    run_options.pass = options.pass;
    run_options.observer = [&](Index k, const Signal& profile, const Signal* state) {
        if (k == 0 || state == nullptr) return;
        // Recover the pass-k tracking error from the shifted profile: the
        // plant input is v_k + u*, the plant state is the deviation + x*.
        Matrix error(m, profile.nodes());
        Signal input(prob.plant.grid, m);
        for (Index i = 0; i < profile.nodes(); ++i) {
            const double t = prob.plant.grid.node(i);
            const Vector u_k = profile.sample(i).tail(m) + ref.input.sample(i);
            input.set_sample(i, u_k);
            error.col(i) =
                plant_g(state->sample(i) + ref.state.sample(i), u_k, t) - prob.y_des.sample(i);
        }
        record.error_norms.push_back(Signal(prob.plant.grid, error).sup_norm());
        record.learning_error_norms.push_back(profile.samples().topRows(m).cwiseAbs().maxCoeff());
        record.final_input = input;
    };

    const RunRecord inner = run_drp(composed, boundary, passes, run_options);
    record.escape_pass = inner.escape_pass;

    if (!record.escape_pass && record.error_norms.size() >= 10) {
        bool positive = true;
        for (double e : record.error_norms)
            if (e <= 1e-300) positive = false;
        if (positive) {
            RunRecord error_record;
            error_record.output_norms = record.error_norms;
            error_record.boundary_scale = record.error_norms.front();
            record.fitted_gamma = estimate_rate(error_record).gamma_hat;
        }
    }
    return record;
}

}  // namespace drp
