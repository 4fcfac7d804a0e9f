#include "drplab/linearization.hpp"

#include <cmath>
#include <stdexcept>

#include "drplab/errors.hpp"

namespace drp {

namespace {

Matrix interpolate_samples(const std::vector<Matrix>& samples, const TimeGrid& grid, double t) {
    const double position = t / grid.step();
    const auto lo = static_cast<Index>(std::floor(position));
    const Index i = std::clamp<Index>(lo, 0, grid.intervals() - 1);
    const double theta = position - static_cast<double>(i);
    if (theta <= 1e-12) return samples[static_cast<std::size_t>(i)];
    if (theta >= 1.0 - 1e-12) return samples[static_cast<std::size_t>(i + 1)];
    return (1.0 - theta) * samples[static_cast<std::size_t>(i)] +
           theta * samples[static_cast<std::size_t>(i + 1)];
}

void require_finite(const Matrix& m, double t, const char* label) {
    if (m.allFinite()) return;
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c)
            if (!std::isfinite(m(r, c)))
                throw LinearizationError(std::string("non-finite ") + label + " Jacobian", t, r, c);
}

}  // namespace

Matrix LTVQuadruple::A_at(double t) const { return interpolate_samples(A, grid, t); }
Matrix LTVQuadruple::B_at(double t) const { return interpolate_samples(B, grid, t); }
Matrix LTVQuadruple::C_at(double t) const { return interpolate_samples(C, grid, t); }
Matrix LTVQuadruple::D_at(double t) const { return interpolate_samples(D, grid, t); }

LTVQuadruple constant_quadruple(const TimeGrid& grid, Matrix A, Matrix B, Matrix C, Matrix D) {
    const auto nodes = static_cast<std::size_t>(grid.nodes());
    LTVQuadruple quad;
    quad.grid = grid;
    quad.A.assign(nodes, std::move(A));
    quad.B.assign(nodes, std::move(B));
    quad.C.assign(nodes, std::move(C));
    quad.D.assign(nodes, std::move(D));
    return quad;
}

LTVQuadruple quadruple_from_functions(const TimeGrid& grid,
                                      const std::function<Matrix(double)>& A,
                                      const std::function<Matrix(double)>& B,
                                      const std::function<Matrix(double)>& C,
                                      const std::function<Matrix(double)>& D) {
    LTVQuadruple quad;
    quad.grid = grid;
    const auto nodes = static_cast<std::size_t>(grid.nodes());
    quad.A.reserve(nodes);
    quad.B.reserve(nodes);
    quad.C.reserve(nodes);
    quad.D.reserve(nodes);
    for (Index i = 0; i < grid.nodes(); ++i) {
        const double t = grid.node(i);
        quad.A.push_back(A(t));
        quad.B.push_back(B(t));
        quad.C.push_back(C(t));
        quad.D.push_back(D(t));
    }
    return quad;
}

Matrix fd_jacobian_state(const StateMap& map, Index out_dim, const Vector& state,
                         const Vector& input, double t) {
    Matrix jac(out_dim, state.size());
    Vector hi = state, lo = state;
    for (Index j = 0; j < state.size(); ++j) {
        const double eps = std::max(1e-6, 1e-6 * std::abs(state[j]));
        hi[j] = state[j] + eps;
        lo[j] = state[j] - eps;
        jac.col(j) = (map(hi, input, t) - map(lo, input, t)) / (2.0 * eps);
        hi[j] = state[j];
        lo[j] = state[j];
    }
    return jac;
}

Matrix fd_jacobian_input(const StateMap& map, Index out_dim, const Vector& state,
                         const Vector& input, double t) {
    Matrix jac(out_dim, input.size());
    Vector hi = input, lo = input;
    for (Index j = 0; j < input.size(); ++j) {
        const double eps = std::max(1e-6, 1e-6 * std::abs(input[j]));
        hi[j] = input[j] + eps;
        lo[j] = input[j] - eps;
        jac.col(j) = (map(state, hi, t) - map(state, lo, t)) / (2.0 * eps);
        hi[j] = input[j];
        lo[j] = input[j];
    }
    return jac;
}

LTVQuadruple linearize_at_origin(const DRPSystem& sys) {
    const Vector zero_state = Vector::Zero(sys.state_dim);
    const Vector zero_input = Vector::Zero(sys.io_dim);

    LTVQuadruple quad;
    quad.grid = sys.grid;
    const auto nodes = static_cast<std::size_t>(sys.grid.nodes());
    quad.A.reserve(nodes);
    quad.B.reserve(nodes);
    quad.C.reserve(nodes);
    quad.D.reserve(nodes);

    for (Index i = 0; i < sys.grid.nodes(); ++i) {
        const double t = sys.grid.node(i);
        Matrix A = sys.df_dstate ? sys.df_dstate(zero_state, zero_input, t)
                                 : fd_jacobian_state(sys.f, sys.state_dim, zero_state, zero_input, t);
        Matrix B = sys.df_dinput ? sys.df_dinput(zero_state, zero_input, t)
                                 : fd_jacobian_input(sys.f, sys.state_dim, zero_state, zero_input, t);
        Matrix C = sys.dg_dstate ? sys.dg_dstate(zero_state, zero_input, t)
                                 : fd_jacobian_state(sys.g, sys.io_dim, zero_state, zero_input, t);
        Matrix D = sys.dg_dinput ? sys.dg_dinput(zero_state, zero_input, t)
                                 : fd_jacobian_input(sys.g, sys.io_dim, zero_state, zero_input, t);
        require_finite(A, t, "df/dstate");
        require_finite(B, t, "df/dinput");
        require_finite(C, t, "dg/dstate");
        require_finite(D, t, "dg/dinput");
        quad.A.push_back(std::move(A));
        quad.B.push_back(std::move(B));
        quad.C.push_back(std::move(C));
        quad.D.push_back(std::move(D));
    }
    return quad;
}

DRPSystem make_ltv_system(const LTVQuadruple& quad) {
    DRPSystem sys;
    sys.grid = quad.grid;
    sys.state_dim = quad.state_dim();
    sys.io_dim = quad.io_dim();
    sys.f = [quad](const Vector& x, const Vector& u, double t) -> Vector {
        return quad.A_at(t) * x + quad.B_at(t) * u;
    };
    sys.g = [quad](const Vector& x, const Vector& u, double t) -> Vector {
        return quad.C_at(t) * x + quad.D_at(t) * u;
    };
    sys.df_dstate = [quad](const Vector&, const Vector&, double t) { return quad.A_at(t); };
    sys.df_dinput = [quad](const Vector&, const Vector&, double t) { return quad.B_at(t); };
    sys.dg_dstate = [quad](const Vector&, const Vector&, double t) { return quad.C_at(t); };
    sys.dg_dinput = [quad](const Vector&, const Vector&, double t) { return quad.D_at(t); };
    sys.origin_anchored = true;
    return sys;
}

Signal residual_phi(const DRPSystem& sys, const LTVQuadruple& quad, const Signal& chi,
                    const Signal& u) {
    if (!(chi.grid() == u.grid()) || !(chi.grid() == quad.grid))
        throw std::invalid_argument("residual_phi: grid mismatch");
    if (chi.dim() != sys.state_dim || u.dim() != sys.io_dim)
        throw std::invalid_argument("residual_phi: dimension mismatch");

    Matrix samples(sys.state_dim + sys.io_dim, chi.nodes());
    for (Index i = 0; i < chi.nodes(); ++i) {
        const double t = quad.grid.node(i);
        const Vector x = chi.sample(i);
        const Vector v = u.sample(i);
        const auto k = static_cast<std::size_t>(i);
        samples.col(i).head(sys.state_dim) = sys.f(x, v, t) - quad.A[k] * x - quad.B[k] * v;
        samples.col(i).tail(sys.io_dim) = sys.g(x, v, t) - quad.C[k] * x - quad.D[k] * v;
    }
    return Signal(chi.grid(), std::move(samples));
}

std::vector<ResidualLadderRow> check_residual_asymptotics(
    const DRPSystem& sys, const LTVQuadruple& quad, const std::vector<double>& scales,
    Index probes, std::uint64_t seed, const PassOptions& options) {
    if (scales.empty()) throw std::domain_error("check_residual_asymptotics: no scales");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0))
            throw std::domain_error("check_residual_asymptotics: scales must be positive");
        if (i > 0 && !(scales[i] < scales[i - 1]))
            throw std::domain_error("check_residual_asymptotics: scales must decrease");
    }
    if (probes < 1) throw std::domain_error("check_residual_asymptotics: need probes");

    Rng rng(seed);
    std::vector<ResidualLadderRow> rows;
    rows.reserve(scales.size());
    for (double scale : scales) {
        double worst = 0.0;
        for (Index p = 0; p < probes; ++p) {
            const double budget = scale * rng.uniform(0.5, 1.0);
            const double split = rng.uniform(0.1, 0.9);
            const Vector chi0 = random_ball_vector(sys.state_dim, split * budget, rng);
            const Signal u =
                random_polynomial_signal(sys.grid, sys.io_dim, (1.0 - split) * budget, rng);
            const PassResult pass = require_no_escape(integrate_pass(sys, chi0, u, options));
            const double denom = sup_norm(u) + max_abs(chi0);
            if (denom < 1e-300) continue;
            worst = std::max(worst, sup_norm(residual_phi(sys, quad, pass.state, u)) / denom);
        }
        rows.push_back({scale, worst});
    }
    return rows;
}

bool ladder_non_increasing(const std::vector<ResidualLadderRow>& rows, double slack) {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].max_ratio > slack * rows[i - 1].max_ratio) return false;
    return true;
}

}  // namespace drp
