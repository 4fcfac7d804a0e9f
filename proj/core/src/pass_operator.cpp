#include "drplab/pass_operator.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace drp {

namespace {

bool sample_ok(const Vector& v, double radius) {
    return v.allFinite() && max_abs(v) <= radius;
}

}  // namespace

PassResult integrate_pass(const DRPSystem& sys, const Vector& chi0, const Signal& u,
                          const PassOptions& options) {
    if (!(u.grid() == sys.grid)) throw std::invalid_argument("integrate_pass: input grid mismatch");
    if (u.dim() != sys.io_dim) throw std::invalid_argument("integrate_pass: input dim mismatch");
    if (chi0.size() != sys.state_dim)
        throw std::invalid_argument("integrate_pass: initial state dim mismatch");

    const TimeGrid& grid = sys.grid;
    const double h = grid.step();
    const Index n_nodes = grid.nodes();

    PassResult result{Signal(grid, sys.state_dim), Signal(grid, sys.io_dim), false, -1};

    auto escape_at = [&](Index node) {
        result.escaped = true;
        result.escape_index = node;
        result.state.samples().rightCols(n_nodes - node).setZero();
        result.output.samples().rightCols(n_nodes - node).setZero();
    };

    Vector chi = chi0;
    if (!sample_ok(chi, options.blow_up_radius)) {
        escape_at(0);
        return result;
    }
    result.state.set_sample(0, chi);

    Vector w = sys.g(chi, u.sample(0), grid.node(0));
    if (!sample_ok(w, options.blow_up_radius)) {
        escape_at(0);
        return result;
    }
    result.output.set_sample(0, w);

    for (Index i = 0; i < grid.intervals(); ++i) {
        const double t = grid.node(i);
        const Vector u_lo = u.sample(i);
        const Vector u_hi = u.sample(i + 1);
        const Vector u_mid = 0.5 * (u_lo + u_hi);

        const Vector k1 = sys.f(chi, u_lo, t);
        const Vector k2 = sys.f(chi + (0.5 * h) * k1, u_mid, t + 0.5 * h);
        const Vector k3 = sys.f(chi + (0.5 * h) * k2, u_mid, t + 0.5 * h);
        const Vector k4 = sys.f(chi + h * k3, u_hi, t + h);
        chi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!sample_ok(chi, options.blow_up_radius)) {
            escape_at(i + 1);
            return result;
        }
        result.state.set_sample(i + 1, chi);

        w = sys.g(chi, u_hi, grid.node(i + 1));
        if (!sample_ok(w, options.blow_up_radius)) {
            escape_at(i + 1);
            return result;
        }
        result.output.set_sample(i + 1, w);
    }
    return result;
}

const PassResult& require_no_escape(const PassResult& result) {
    if (result.escaped) throw EscapeError("pass escaped", result.escape_index);
    return result;
}

PassResult require_no_escape(PassResult&& result) {
    if (result.escaped) throw EscapeError("pass escaped", result.escape_index);
    return std::move(result);
}

Signal random_polynomial_signal(const TimeGrid& grid, Index dim, double amplitude, Rng& rng) {
    Matrix coeffs(dim, 4);
    for (Index r = 0; r < dim; ++r)
        for (Index c = 0; c < 4; ++c) coeffs(r, c) = rng.uniform(-1.0, 1.0);

    Matrix samples(dim, grid.nodes());
    for (Index i = 0; i < grid.nodes(); ++i) {
        const double tau = grid.node(i) / grid.horizon();
        samples.col(i) =
            coeffs.col(0) + tau * (coeffs.col(1) + tau * (coeffs.col(2) + tau * coeffs.col(3)));
    }
    const double raw = samples.cwiseAbs().maxCoeff();
    if (raw > 0.0) samples *= amplitude / raw;
    return Signal(grid, std::move(samples));
}

Vector random_ball_vector(Index dim, double radius, Rng& rng) {
    Vector v = rng.uniform_vector(dim, -1.0, 1.0);
    double norm = max_abs(v);
    while (norm < 1e-12) {
        v = rng.uniform_vector(dim, -1.0, 1.0);
        norm = max_abs(v);
    }
    return (radius / norm) * v;
}

LipschitzEstimate estimate_lipschitz(const DRPSystem& sys, double delta_bar, Index probes,
                                     std::uint64_t seed, const PassOptions& options) {
    if (!(delta_bar > 0.0)) throw std::domain_error("estimate_lipschitz: delta_bar must be > 0");
    if (probes < 2) throw std::domain_error("estimate_lipschitz: need at least two probes");

    Rng rng(seed);
    std::vector<Vector> chi0s;
    std::vector<Signal> inputs;
    std::vector<PassResult> results;
    chi0s.reserve(probes);
    inputs.reserve(probes);
    results.reserve(probes);

    for (Index p = 0; p < probes; ++p) {
        // Split a budget strictly inside the delta_bar ball between the
        // initial state and the input sup norm.
        const double budget = 0.95 * delta_bar * rng.uniform(0.1, 1.0);
        const double split = rng.uniform(0.1, 0.9);
        chi0s.push_back(random_ball_vector(sys.state_dim, split * budget, rng));
        inputs.push_back(random_polynomial_signal(sys.grid, sys.io_dim, (1.0 - split) * budget, rng));
        results.push_back(require_no_escape(integrate_pass(sys, chi0s.back(), inputs.back(), options)));
    }

    LipschitzEstimate estimate;
    for (Index i = 0; i < probes; ++i) {
        for (Index j = i + 1; j < probes; ++j) {
            const double denom =
                sup_norm(inputs[i] - inputs[j]) + max_abs(chi0s[i] - chi0s[j]);
            if (denom < 1e-14) continue;
            estimate.state_gain =
                std::max(estimate.state_gain, sup_norm(results[i].state - results[j].state) / denom);
            estimate.output_gain = std::max(
                estimate.output_gain, sup_norm(results[i].output - results[j].output) / denom);
            ++estimate.probe_pairs;
        }
    }
    return estimate;
}

}  // namespace drp
