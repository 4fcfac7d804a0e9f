#include "drplab/ltv_analysis.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "drplab/errors.hpp"
#include "drplab/pass_operator.hpp"

namespace drp {

double spectral_radius(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius: non-square matrix");
    if (m.size() == 0) return 0.0;
    if (!m.allFinite()) throw std::invalid_argument("spectral_radius: non-finite entries");
    if (m.rows() == 1) return std::abs(m(0, 0));
    Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("spectral_radius: eigensolver did not converge");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

StabilityCertificate alpha_certificate(const LTVQuadruple& quad) {
    if (quad.D.empty()) throw std::invalid_argument("alpha_certificate: empty quadruple");
    StabilityCertificate cert;
    cert.per_time_rho.reserve(quad.D.size());
    cert.alpha = 0.0;
    for (std::size_t i = 0; i < quad.D.size(); ++i) {
        const double rho = spectral_radius(quad.D[i]);
        cert.per_time_rho.push_back(rho);
        if (rho > cert.alpha) {
            cert.alpha = rho;
            cert.argmax_node = static_cast<Index>(i);
        }
    }
    cert.margin = 1.0 - cert.alpha;
    cert.verdict =
        cert.alpha < 1.0 ? StabilityVerdict::certified_stable : StabilityVerdict::not_certified;
    return cert;
}

LiftedOperator build_lifted_G0(const LTVQuadruple& quad) {
    const TimeGrid& grid = quad.grid;
    const Index n = quad.state_dim();
    const Index m = quad.io_dim();
    const Index nodes = grid.nodes();
    const Index size = m * nodes;
    const double h = grid.step();

    // States for all m*nodes basis inputs integrated side by side; the basis
    // input at node j only feeds steps j-1 -> j and j -> j+1.
    Matrix states = Matrix::Zero(n, size);
    LiftedOperator op{grid, m, Matrix::Zero(size, size)};

    auto emit_output_row = [&](Index i, const Matrix& x_now) {
        const auto k = static_cast<std::size_t>(i);
        op.matrix.middleRows(i * m, m) = quad.C[k] * x_now;
        op.matrix.block(i * m, i * m, m, m) += quad.D[k];
    };

    emit_output_row(0, states);

    for (Index i = 0; i < grid.intervals(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        const Matrix& A_lo = quad.A[k];
        const Matrix& A_hi = quad.A[k + 1];
        const Matrix A_mid = 0.5 * (A_lo + A_hi);
        const Matrix& B_lo = quad.B[k];
        const Matrix& B_hi = quad.B[k + 1];
        const Matrix B_mid = 0.5 * (B_lo + B_hi);

        // Hat values: input block i is 1 at t_i, 1/2 at the midpoint, 0 at
        // t_{i+1}; block i+1 is the mirror image.
        Matrix k1 = A_lo * states;
        k1.middleCols(i * m, m) += B_lo;

        Matrix k2 = A_mid * (states + (0.5 * h) * k1);
        k2.middleCols(i * m, m) += 0.5 * B_mid;
        k2.middleCols((i + 1) * m, m) += 0.5 * B_mid;

        Matrix k3 = A_mid * (states + (0.5 * h) * k2);
        k3.middleCols(i * m, m) += 0.5 * B_mid;
        k3.middleCols((i + 1) * m, m) += 0.5 * B_mid;

        Matrix k4 = A_hi * (states + h * k3);
        k4.middleCols((i + 1) * m, m) += B_hi;

        states += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        emit_output_row(i + 1, states);
    }
    return op;
}

Matrix build_lifted_H(const LTVQuadruple& quad) {
    const DRPSystem sys = make_ltv_system(quad);
    const Index n = quad.state_dim();
    const Index m = quad.io_dim();
    const Index nodes = quad.grid.nodes();
    Matrix H(m * nodes, n);
    const Signal zero_input(quad.grid, m);
    for (Index j = 0; j < n; ++j) {
        const PassResult pass = integrate_pass(sys, Vector::Unit(n, j), zero_input);
        for (Index i = 0; i < nodes; ++i) H.block(i * m, j, m, 1) = pass.output.sample(i);
    }
    return H;
}

double causality_defect(const LiftedOperator& op) {
    const Index m = op.io_dim;
    const Index nodes = op.grid.nodes();
    double defect = 0.0;
    for (Index i = 0; i < nodes; ++i) {
        const Index row = i * m;
        const Index first_upper = (i + 1) * m;
        if (first_upper >= op.matrix.cols()) break;
        defect = std::max(
            defect,
            op.matrix.block(row, first_upper, m, op.matrix.cols() - first_upper)
                .cwiseAbs()
                .maxCoeff());
    }
    return defect;
}

std::vector<double> power_log_norms(const LiftedOperator& op, Index k_max) {
    if (k_max < 1) throw std::domain_error("power_log_norms: k_max must be >= 1");
    std::vector<double> log_norms;
    log_norms.reserve(static_cast<std::size_t>(k_max));

    Matrix power = op.matrix;
    double log_scale = 0.0;
    for (Index k = 1; k <= k_max; ++k) {
        const double norm = induced_inf_norm(power);
        log_norms.push_back(norm > 0.0 ? std::log(norm) + log_scale
                                       : -std::numeric_limits<double>::infinity());
        if (k == k_max) break;
        if (norm == 0.0) {
            // Exactly nilpotent at grid resolution; all later powers vanish.
            for (Index j = k + 1; j <= k_max; ++j)
                log_norms.push_back(-std::numeric_limits<double>::infinity());
            break;
        }
        if (norm > 1e100 || norm < 1e-100) {
            power /= norm;
            log_scale += std::log(norm);
        }
        power = power * op.matrix;
    }
    return log_norms;
}

std::vector<double> gelfand_estimate(const LiftedOperator& op, Index k_max) {
    const std::vector<double> log_norms = power_log_norms(op, k_max);
    std::vector<double> roots;
    roots.reserve(log_norms.size());
    for (std::size_t i = 0; i < log_norms.size(); ++i)
        roots.push_back(std::exp(log_norms[i] / static_cast<double>(i + 1)));
    return roots;
}

PowerEnvelope fit_power_envelope(const LiftedOperator& op, Index k_max) {
    const std::vector<double> log_norms = power_log_norms(op, k_max);
    const double rho_est =
        std::exp(log_norms.back() / static_cast<double>(k_max));
    PowerEnvelope env;
    env.zeta = 0.5 * (rho_est + 1.0);
    const double log_zeta = std::log(env.zeta);
    double log_m = 0.0;  // k = 0 term: ||I|| = 1
    for (std::size_t i = 0; i < log_norms.size(); ++i)
        log_m = std::max(log_m, log_norms[i] - static_cast<double>(i + 1) * log_zeta);
    env.m_bar = std::exp(log_m);
    return env;
}

std::vector<Signal> superposition_solution(const LTVQuadruple& quad, const Signal& y0,
                                           const VectorSequence& x0_seq, Index passes) {
    if (passes < 0) throw std::domain_error("superposition_solution: negative pass count");
    if (x0_seq.size() < passes)
        throw std::invalid_argument("superposition_solution: boundary sequence too short");
    if (y0.dim() != quad.io_dim() || x0_seq.dim() != quad.state_dim())
        throw std::invalid_argument("superposition_solution: dimension mismatch");
    if (!(y0.grid() == quad.grid))
        throw std::invalid_argument("superposition_solution: grid mismatch");

    const DRPSystem sys = make_ltv_system(quad);
    const Vector zero_state = Vector::Zero(quad.state_dim());
    const Signal zero_input(quad.grid, quad.io_dim());

    auto apply_G0 = [&](const Signal& y) { return integrate_pass(sys, zero_state, y).output; };
    auto apply_H = [&](const Vector& x0) { return integrate_pass(sys, x0, zero_input).output; };

    std::vector<Signal> result(static_cast<std::size_t>(passes) + 1, Signal(quad.grid, quad.io_dim()));

    // Free-response chain G0^k y0.
    Signal chain = y0;
    result[0] += chain;
    for (Index k = 1; k <= passes; ++k) {
        chain = apply_G0(chain);
        result[static_cast<std::size_t>(k)] += chain;
    }

    // Boundary chains G0^{k-i} H x_i(0).
    for (Index i = 1; i <= passes; ++i) {
        Signal term = apply_H(x0_seq.item(i - 1));
        result[static_cast<std::size_t>(i)] += term;
        for (Index k = i + 1; k <= passes; ++k) {
            term = apply_G0(term);
            result[static_cast<std::size_t>(k)] += term;
        }
    }
    return result;
}

KgGamma kg_gamma_bound(double m_bar, double zeta, double h_norm, double lambda) {
    if (!(m_bar >= 1.0)) throw std::domain_error("kg_gamma_bound: m_bar must be >= 1");
    if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("kg_gamma_bound: zeta must lie in (0,1)");
    if (!(h_norm >= 0.0)) throw std::domain_error("kg_gamma_bound: h_norm must be >= 0");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::domain_error("kg_gamma_bound: lambda must lie in (0,1)");
    const double lambda_bar = std::max(zeta, lambda);
    return {m_bar * std::max(1.0, 2.0 * h_norm / (1.0 - lambda_bar)), 0.5 * (1.0 + lambda_bar)};
}

}  // namespace drp
