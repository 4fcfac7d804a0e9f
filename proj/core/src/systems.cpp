#include "drplab/systems.hpp"

#include <cmath>
#include <stdexcept>

namespace drp {

namespace {

constexpr double two_pi = 6.283185307179586;

}  // namespace

DRPSystem van_der_pol_drp(const TimeGrid& grid, std::function<double(double)> damping) {
    DRPSystem sys;
    sys.grid = grid;
    sys.state_dim = 2;
    sys.io_dim = 1;
    sys.origin_anchored = true;

    sys.f = [damping](const Vector& x, const Vector& u, double t) -> Vector {
        Vector dx(2);
        dx[0] = x[1];
        dx[1] = -x[0] + damping(t) * (1.0 - x[0] * x[0]) * x[1] + u[0];
        return dx;
    };
    sys.g = [](const Vector& x, const Vector&, double) -> Vector {
        return Vector::Constant(1, x[0]);
    };

    sys.df_dstate = [damping](const Vector& x, const Vector&, double t) -> Matrix {
        Matrix jac(2, 2);
        jac << 0.0, 1.0, -1.0 - 2.0 * damping(t) * x[0] * x[1],
            damping(t) * (1.0 - x[0] * x[0]);
        return jac;
    };
    sys.df_dinput = [](const Vector&, const Vector&, double) -> Matrix {
        Matrix jac(2, 1);
        jac << 0.0, 1.0;
        return jac;
    };
    sys.dg_dstate = [](const Vector&, const Vector&, double) -> Matrix {
        Matrix jac(1, 2);
        jac << 1.0, 0.0;
        return jac;
    };
    sys.dg_dinput = [](const Vector&, const Vector&, double) -> Matrix {
        return Matrix::Zero(1, 1);
    };
    return sys;
}

std::function<double(double)> tracking_example_damping() {
    return [](double t) { return 4.0 + 0.5 * std::sin(two_pi * 10.0 * t); };
}

DRPSystem scalar_lti_drp(const TimeGrid& grid, double a, double b, double c, double d) {
    return make_ltv_system(constant_quadruple(grid, Matrix::Constant(1, 1, a),
                                              Matrix::Constant(1, 1, b),
                                              Matrix::Constant(1, 1, c),
                                              Matrix::Constant(1, 1, d)));
}

DRPSystem memoryless_scalar_drp(const TimeGrid& grid, double gain) {
    return scalar_lti_drp(grid, 0.0, 0.0, 0.0, gain);
}

LTVQuadruple scalar_gain_quadruple(const TimeGrid& grid,
                                   const std::function<double(double)>& gain) {
    return quadruple_from_functions(
        grid, [](double) { return Matrix::Zero(1, 1); },
        [](double) { return Matrix::Zero(1, 1); }, [](double) { return Matrix::Zero(1, 1); },
        [gain](double t) { return Matrix::Constant(1, 1, gain(t)); });
}

LTVQuadruple scalar_gain_quadruple(const TimeGrid& grid, double gain) {
    return scalar_gain_quadruple(grid, [gain](double) { return gain; });
}

LTVQuadruple random_quadruple(const TimeGrid& grid, Index state_dim, Index io_dim,
                              double alpha_target, Rng& rng, double coupling) {
    if (!(alpha_target >= 0.0)) throw std::domain_error("random_quadruple: negative alpha");

    auto random_matrix = [&rng](Index rows, Index cols, double scale) {
        Matrix m(rows, cols);
        for (Index r = 0; r < rows; ++r)
            for (Index c = 0; c < cols; ++c) m(r, c) = rng.uniform(-scale, scale);
        return m;
    };

    const Matrix A0 = random_matrix(state_dim, state_dim, coupling);
    const Matrix A1 = random_matrix(state_dim, state_dim, 0.5 * coupling);
    const Matrix B0 = random_matrix(state_dim, io_dim, coupling);
    const Matrix C0 = random_matrix(io_dim, state_dim, coupling);
    Matrix D0 = random_matrix(io_dim, io_dim, 1.0);
    D0 += 0.5 * Matrix::Identity(io_dim, io_dim);  // keep rho(D) away from zero
    const Matrix D1 = random_matrix(io_dim, io_dim, 0.3);

    const double T = grid.horizon();
    LTVQuadruple quad = quadruple_from_functions(
        grid,
        [&](double t) { return Matrix(A0 + std::sin(two_pi * t / T) * A1); },
        [&](double) { return B0; }, [&](double) { return C0; },
        [&](double t) { return Matrix(D0 + std::sin(two_pi * t / T) * D1); });

    double alpha_raw = 0.0;
    for (const Matrix& D : quad.D) alpha_raw = std::max(alpha_raw, spectral_radius(D));
    if (alpha_raw < 1e-9)
        throw std::domain_error("random_quadruple: degenerate D draw, reseed");
    const double rescale = alpha_target / alpha_raw;
    for (Matrix& D : quad.D) D *= rescale;
    return quad;
}

DRPSystem with_cubic_perturbation(const DRPSystem& base, double strength, std::uint64_t seed) {
    Rng rng(seed);
    const Index n = base.state_dim;
    const Index m = base.io_dim;
    const Index z_dim = n + m;

    auto coefficients = [&rng](Index rows, Index cols) {
        Matrix c(rows, cols);
        for (Index r = 0; r < rows; ++r)
            for (Index j = 0; j < cols; ++j) c(r, j) = rng.uniform(-1.0, 1.0);
        return c;
    };
    const Matrix cf = strength * coefficients(n, z_dim);
    const Matrix cg = strength * coefficients(m, z_dim);

    auto cubes = [n, m](const Vector& x, const Vector& u) {
        Vector z(n + m);
        z.head(n) = x.array().cube();
        z.tail(m) = u.array().cube();
        return z;
    };

    DRPSystem sys = base;
    const StateMap base_f = base.f;
    const OutputMap base_g = base.g;
    sys.f = [base_f, cf, cubes](const Vector& x, const Vector& u, double t) -> Vector {
        return base_f(x, u, t) + cf * cubes(x, u);
    };
    sys.g = [base_g, cg, cubes](const Vector& x, const Vector& u, double t) -> Vector {
        return base_g(x, u, t) + cg * cubes(x, u);
    };
    // Cube terms have zero Jacobian at the origin but not elsewhere; the
    // base callbacks would be wrong away from it.
    sys.df_dstate = nullptr;
    sys.df_dinput = nullptr;
    sys.dg_dstate = nullptr;
    sys.dg_dinput = nullptr;
    return sys;
}

TrackingExample make_tracking_example(Index grid_intervals, Index passes, std::uint64_t seed) {
    const TimeGrid grid(2.0, grid_intervals);
    const auto damping = tracking_example_damping();

    auto y_des_fn = [](double t) { return 0.1 * std::cos(two_pi * t); };
    auto y_des_dot_fn = [](double t) { return -0.1 * two_pi * std::sin(two_pi * t); };
    auto y_des_ddot_fn = [](double t) { return -0.1 * two_pi * two_pi * std::cos(two_pi * t); };

    ILCProblem prob{
        .plant = van_der_pol_drp(grid, damping),
        .y_des = Signal::from_function(grid, 1,
                                       [&](double t) { return Vector::Constant(1, y_des_fn(t)); }),
        .u_star = std::nullopt,
        .x_star0 = Vector{{0.1, 0.0}},
        .update = [](const Vector& e, double) -> Vector { return -e; },
        .update_jacobian = [](const Vector&, double) { return Matrix::Constant(1, 1, -1.0); },
        .psi = {},
        .dpsi_dinput = {},
        .psi_des = std::nullopt,
        .q_filter = nullptr,
    };

    // The plant is in normal form with relative degree 2, so the exact
    // feedforward inverts the acceleration channel: u* = ydd + y - X(t)(1 - y^2) yd.
    prob.u_star = Signal::from_function(grid, 1, [&](double t) {
        const double y = y_des_fn(t);
        const double yd = y_des_dot_fn(t);
        const double ydd = y_des_ddot_fn(t);
        return Vector::Constant(1, ydd + y - damping(t) * (1.0 - y * y) * yd);
    });

    // Relative degree 2: the update consumes the acceleration error, and the
    // acceleration is the second state equation evaluated exactly.
    prob.psi = [damping](const Vector& x, const Vector& u, double t) -> Vector {
        return Vector::Constant(1, -x[0] + damping(t) * (1.0 - x[0] * x[0]) * x[1] + u[0]);
    };
    prob.dpsi_dinput = [](const Vector&, const Vector&, double) {
        return Matrix::Constant(1, 1, 1.0);
    };
    prob.psi_des = Signal::from_function(
        grid, 1, [&](double t) { return Vector::Constant(1, y_des_ddot_fn(t)); });

    TrackingExample example{.problem = std::move(prob),
                            .initial_states = VectorSequence::zero(2, passes + 1),
                            .ic_lambda = 0.0};

    Rng rng(seed);
    example.ic_lambda = rng.uniform(0.2, 0.95);
    example.initial_states = VectorSequence::e_lambda_random(
        passes + 1, example.ic_lambda, 0.09, Vector{{0.1, 0.0}}, rng);
    return example;
}

}  // namespace drp
