#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "drplab/pass_operator.hpp"
#include "drplab/sequences.hpp"
#include "drplab/signal.hpp"

namespace drp {

/// Boundary data of a multi-pass run: the pass-0 profile y0 and the
/// initial-state sequence, item k supplying x_{k+1}(0).
struct BoundarySpec {
    Signal y0;
    VectorSequence x0;

    /// ||y0|| + e_lambda norm of x0 at its declared lambda (sup norm for
    /// non-geometric classes); the normalizer of fitted constants.
    double scale() const;
};

/// Per-pass record of a multi-pass simulation. Norm entries stop at the
/// escape pass when one occurs.
struct RunRecord {
    std::vector<double> output_norms;  // ||y_k||, k = 0..K
    std::vector<double> state_norms;   // ||x_k||, k = 1..K at index k; entry 0 is 0
    std::optional<Index> escape_pass;
    std::optional<double> fitted_gamma;  // present when >= 5 finite tail points
    std::optional<double> fitted_K;
    std::deque<Signal> last_outputs;  // ring of the most recent pass profiles
    double boundary_scale = 0.0;

    /// CSV serialization: header k,output_sup_norm,state_sup_norm with one
    /// row per recorded pass, 17 significant digits, LF line endings.
    std::string to_csv() const;
};

struct RunOptions {
    PassOptions pass;
    Index keep_last = 2;  // size of the stored-signal ring
    double rate_tail_fraction = 0.5;
    /// Called once per pass with (k, y_k, x_k); x_k is null for k = 0.
    std::function<void(Index, const Signal&, const Signal*)> observer;
};

/// Iterates the repetitive process: pass k+1 integrates the differential
/// dynamics with input y_k and initial state x_{k+1}(0), recording sup
/// norms. Escape stops the run and is recorded, not thrown. A rate fit is
/// attached when the tail is long enough.
RunRecord run_drp(const DRPSystem& sys, const BoundarySpec& boundary, Index passes,
                  const RunOptions& options = {});

struct RateFit {
    double gamma_hat = 0.0;
    double K_hat = 0.0;
    bool deadbeat = false;  // exact zeros in the tail; fit skipped
};

/// Least-squares line through (k, log ||y_k||) over the trailing fraction of
/// the record: gamma_hat = exp(slope), K_hat = exp(intercept) normalized by
/// the boundary scale. Requires at least 5 tail points.
RateFit estimate_rate(const RunRecord& record, double tail_fraction = 0.5);

/// True iff ||y_k|| <= K_fn(lambda) gamma_fn(lambda)^k (||y0|| +
/// e_lambda_norm(x0, lambda)) for every recorded pass.
bool check_exp_bound(const RunRecord& record, const BoundarySpec& boundary,
                     const std::function<double(double)>& K_fn,
                     const std::function<double(double)>& gamma_fn, double lambda);

using PassMap = std::function<Signal(const Signal&)>;

/// Truncated-orbit Lyapunov functional V(y) = sum_{i=0}^{N-1} ||F0^i(y)||
/// for the zero-initial-state pass map F0. Evaluation triggers N-1 pass
/// integrations.
class LyapunovFunctional {
public:
    LyapunovFunctional(PassMap pass_map, Index horizon);

    double operator()(const Signal& y) const;
    Index horizon() const noexcept { return horizon_; }

private:
    PassMap pass_map_;
    Index horizon_;
};

LyapunovFunctional build_lyapunov_functional(PassMap pass_map, Index horizon);

struct LyapunovCheck {
    double c1 = 0.0;  // min V/||y||
    double c2 = 0.0;  // max V/||y||
    double c3 = 0.0;  // min -(V(F0 y) - V(y)) / ||y||
    bool pass = false;
};

/// Samples random signals in the given sup-norm ball (cubic polynomials plus
/// 10% grid noise) and fits the sandwich and decrease constants of the
/// functional. Passes iff c3 > 0 and c2 >= c3 (equality only on deadbeat
/// maps, where the sandwich constant may be inflated at will).
LyapunovCheck lyapunov_decrease_check(const LyapunovFunctional& functional,
                                      const PassMap& pass_map, Index samples, double radius,
                                      std::uint64_t seed, const TimeGrid& grid, Index dim);

/// The zero-initial-state pass map of a system, as consumed by the Lyapunov
/// machinery. Escape during evaluation throws EscapeError.
PassMap zero_state_pass_map(const DRPSystem& sys, const PassOptions& options = {});

}  // namespace drp
