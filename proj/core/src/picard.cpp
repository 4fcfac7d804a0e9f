#include "drplab/picard.hpp"

#include <cmath>
#include <stdexcept>

#include "drplab/errors.hpp"

namespace drp {

Signal integrate_ode(const OdeField& field, const Vector& x0, const TimeGrid& grid,
                     Index refine) {
    if (refine < 1) throw std::domain_error("integrate_ode: refine must be >= 1");
    const double h = grid.step() / static_cast<double>(refine);
    const Index dim = x0.size();

    Matrix samples(dim, grid.nodes());
    Vector x = x0;
    samples.col(0) = x;
    for (Index i = 0; i < grid.intervals(); ++i) {
        for (Index sub = 0; sub < refine; ++sub) {
            const double t = grid.node(i) + h * static_cast<double>(sub);
            const Vector k1 = field(x, t);
            const Vector k2 = field(x + (0.5 * h) * k1, t + 0.5 * h);
            const Vector k3 = field(x + (0.5 * h) * k2, t + 0.5 * h);
            const Vector k4 = field(x + h * k3, t + h);
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!x.allFinite())
                throw EscapeError("integrate_ode: trajectory became non-finite", i + 1);
        }
        samples.col(i + 1) = x;
    }
    return Signal(grid, std::move(samples));
}

PicardProblem make_picard_problem(OdeField field, OdeJacobian field_jacobian, Vector x_star0,
                                  const TimeGrid& grid, Index refine) {
    Signal reference = integrate_ode(field, x_star0, grid, refine);
    return {std::move(field), std::move(field_jacobian), std::move(x_star0), grid,
            std::move(reference)};
}

DRPSystem picard_drp(const PicardProblem& prob) {
    const Index dim = prob.x_star0.size();
    const OdeField field = prob.field;
    const OdeJacobian jacobian = prob.field_jacobian;
    const Signal reference = prob.reference_solution;

    DRPSystem sys;
    sys.grid = prob.grid;
    sys.state_dim = dim;
    sys.io_dim = dim;
    sys.origin_anchored = true;

    // Shifted field: the iterate deviation obeys chi' = f(y + x*, t) - f(x*, t),
    // with d/dt x* evaluated as f(x*, t) (exact along the solution).
    sys.f = [field, reference](const Vector&, const Vector& input, double t) -> Vector {
        const Vector x_ref = interpolate(reference, t);
        return field(input + x_ref, t) - field(x_ref, t);
    };
    sys.g = [](const Vector& state, const Vector&, double) -> Vector { return state; };

    sys.df_dstate = [dim](const Vector&, const Vector&, double) {
        return Matrix::Zero(dim, dim);
    };
    if (jacobian) {
        sys.df_dinput = [jacobian, reference](const Vector&, const Vector& input, double t) {
            return jacobian(input + interpolate(reference, t), t);
        };
    }
    sys.dg_dstate = [dim](const Vector&, const Vector&, double) {
        return Matrix::Identity(dim, dim);
    };
    sys.dg_dinput = [dim](const Vector&, const Vector&, double) {
        return Matrix::Zero(dim, dim);
    };
    return sys;
}

RunRecord run_picard(const PicardProblem& prob, Index passes, const VectorSequence& x0_seq,
                     const PicardRunOptions& options) {
    if (x0_seq.dim() != prob.x_star0.size())
        throw std::invalid_argument("run_picard: boundary dimension mismatch");

    const DRPSystem sys = picard_drp(prob);
    const Signal y0 = options.initial_iterate ? *options.initial_iterate
                                              : Signal::constant(prob.grid, prob.x_star0);
    BoundarySpec boundary{y0 - prob.reference_solution,
                          x0_seq.translated(-prob.x_star0)};

    RunOptions run_options;
    run_options.pass = options.pass;
    return run_drp(sys, boundary, passes, run_options);
}

}  // namespace drp
