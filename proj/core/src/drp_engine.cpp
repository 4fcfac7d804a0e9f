#include "drplab/drp_engine.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace drp {

double BoundarySpec::scale() const {
    const double lambda = x0.declared_class() == SequenceClass::e_lambda ? x0.lambda() : 1.0;
    return sup_norm(y0) + e_lambda_norm(x0, lambda);
}

std::string RunRecord::to_csv() const {
    std::string csv = "k,output_sup_norm,state_sup_norm\n";
    char row[96];
    for (std::size_t k = 0; k < output_norms.size(); ++k) {
        std::snprintf(row, sizeof row, "%zu,%.17g,%.17g\n", k, output_norms[k],
                      k < state_norms.size() ? state_norms[k] : 0.0);
        csv += row;
    }
    return csv;
}

RunRecord run_drp(const DRPSystem& sys, const BoundarySpec& boundary, Index passes,
                  const RunOptions& options) {
    if (passes < 0) throw std::domain_error("run_drp: negative pass count");
    if (boundary.x0.size() < passes)
        throw std::invalid_argument("run_drp: boundary sequence shorter than pass count");
    if (boundary.y0.dim() != sys.io_dim || boundary.x0.dim() != sys.state_dim)
        throw std::invalid_argument("run_drp: boundary dimension mismatch");
    if (!(boundary.y0.grid() == sys.grid))
        throw std::invalid_argument("run_drp: boundary grid mismatch");

    RunRecord record;
    record.boundary_scale = boundary.scale();
    record.output_norms.reserve(static_cast<std::size_t>(passes) + 1);
    record.state_norms.reserve(static_cast<std::size_t>(passes) + 1);

    Signal profile = boundary.y0;
    record.output_norms.push_back(sup_norm(profile));
    record.state_norms.push_back(0.0);  // pass 0 carries no state
    if (options.observer) options.observer(0, profile, nullptr);
    record.last_outputs.push_back(profile);

    for (Index k = 0; k < passes; ++k) {
        const PassResult pass =
            integrate_pass(sys, boundary.x0.item(k), profile, options.pass);
        if (pass.escaped) {
            record.escape_pass = k + 1;
            break;
        }
        profile = pass.output;
        record.output_norms.push_back(sup_norm(profile));
        record.state_norms.push_back(sup_norm(pass.state));
        if (options.observer) options.observer(k + 1, profile, &pass.state);
        record.last_outputs.push_back(profile);
        while (record.last_outputs.size() > static_cast<std::size_t>(std::max<Index>(1, options.keep_last)))
            record.last_outputs.pop_front();
    }

    if (!record.escape_pass) {
        const std::size_t tail = static_cast<std::size_t>(
            options.rate_tail_fraction * static_cast<double>(record.output_norms.size()));
        if (tail >= 5) {
            const RateFit fit = estimate_rate(record, options.rate_tail_fraction);
            record.fitted_gamma = fit.gamma_hat;
            record.fitted_K = fit.K_hat;
        }
    }
    return record;
}

RateFit estimate_rate(const RunRecord& record, double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw std::domain_error("estimate_rate: tail fraction must lie in (0,1]");
    const std::size_t count = record.output_norms.size();
    const std::size_t tail_len =
        std::max<std::size_t>(1, static_cast<std::size_t>(tail_fraction * count));
    if (tail_len < 5) throw std::domain_error("estimate_rate: need at least 5 tail points");
    const std::size_t start = count - tail_len;

    RateFit fit;
    for (std::size_t k = start; k < count; ++k) {
        if (record.output_norms[k] <= 1e-300) {
            // Deadbeat: the run died to exact (or subnormal-level) zero.
            fit.deadbeat = true;
            fit.gamma_hat = 0.0;
            fit.K_hat = 0.0;
            return fit;
        }
        if (!std::isfinite(record.output_norms[k]))
            throw std::domain_error("estimate_rate: non-finite tail norm");
    }

    // Least squares of log||y_k|| against k over the tail.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(tail_len);
    for (std::size_t k = start; k < count; ++k) {
        const double x = static_cast<double>(k);
        const double y = std::log(record.output_norms[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    const double intercept = (sy - slope * sx) / n;
    fit.gamma_hat = std::exp(slope);
    fit.K_hat = record.boundary_scale > 0.0 ? std::exp(intercept) / record.boundary_scale
                                            : std::exp(intercept);
    return fit;
}

bool check_exp_bound(const RunRecord& record, const BoundarySpec& boundary,
                     const std::function<double(double)>& K_fn,
                     const std::function<double(double)>& gamma_fn, double lambda) {
    const double K = K_fn(lambda);
    const double gamma = gamma_fn(lambda);
    if (!(K >= 1.0)) throw std::domain_error("check_exp_bound: K(lambda) must be >= 1");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("check_exp_bound: gamma(lambda) must lie in (0,1)");

    const double boundary_size = sup_norm(boundary.y0) + e_lambda_norm(boundary.x0, lambda);
    double envelope = K * boundary_size;
    for (double norm : record.output_norms) {
        if (norm > envelope) return false;
        envelope *= gamma;
    }
    return true;
}

LyapunovFunctional::LyapunovFunctional(PassMap pass_map, Index horizon)
    : pass_map_(std::move(pass_map)), horizon_(horizon) {
    if (horizon < 1) throw std::domain_error("LyapunovFunctional: horizon must be >= 1");
    if (!pass_map_) throw std::invalid_argument("LyapunovFunctional: empty pass map");
}

double LyapunovFunctional::operator()(const Signal& y) const {
    double value = sup_norm(y);
    Signal iterate = y;
    for (Index i = 1; i < horizon_; ++i) {
        iterate = pass_map_(iterate);
        value += sup_norm(iterate);
    }
    return value;
}

LyapunovFunctional build_lyapunov_functional(PassMap pass_map, Index horizon) {
    return LyapunovFunctional(std::move(pass_map), horizon);
}

LyapunovCheck lyapunov_decrease_check(const LyapunovFunctional& functional,
                                      const PassMap& pass_map, Index samples, double radius,
                                      std::uint64_t seed, const TimeGrid& grid, Index dim) {
    if (samples < 1) throw std::domain_error("lyapunov_decrease_check: need samples");
    if (!(radius > 0.0)) throw std::domain_error("lyapunov_decrease_check: radius must be > 0");

    Rng rng(seed);
    LyapunovCheck check;
    check.c1 = std::numeric_limits<double>::infinity();
    check.c3 = std::numeric_limits<double>::infinity();

    for (Index s = 0; s < samples; ++s) {
        // Smooth polynomial base plus 10% rough grid noise, scaled into the ball.
        Signal y = random_polynomial_signal(grid, dim, 1.0, rng);
        for (Index i = 0; i < y.nodes(); ++i)
            for (Index r = 0; r < dim; ++r) y.samples()(r, i) += 0.1 * rng.uniform(-1.0, 1.0);
        const double raw = sup_norm(y);
        if (raw < 1e-12) continue;
        y *= radius * rng.uniform(0.2, 1.0) / raw;

        const double norm = sup_norm(y);
        const double v = functional(y);
        const double v_next = functional(pass_map(y));
        check.c1 = std::min(check.c1, v / norm);
        check.c2 = std::max(check.c2, v / norm);
        check.c3 = std::min(check.c3, -(v_next - v) / norm);
    }
    // c3 <= c2 always holds for consistent estimates (V(F0 y) >= 0 forces
    // it); equality occurs on deadbeat maps, where the sandwich constant can
    // be inflated by any epsilon, so the comparison is non-strict.
    check.pass = check.c3 > 0.0 && check.c2 >= check.c3;
    return check;
}

PassMap zero_state_pass_map(const DRPSystem& sys, const PassOptions& options) {
    const Vector zero_state = Vector::Zero(sys.state_dim);
    return [sys, zero_state, options](const Signal& y) {
        return require_no_escape(integrate_pass(sys, zero_state, y, options)).output;
    };
}

}  // namespace drp
