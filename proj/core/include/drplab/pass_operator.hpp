#pragma once

#include <cstdint>

#include "drplab/drp_system.hpp"
#include "drplab/errors.hpp"
#include "drplab/rng.hpp"
#include "drplab/signal.hpp"

namespace drp {

struct PassOptions {
    /// States (and outputs) beyond this max-abs radius count as finite
    /// escape instead of silently propagating NaNs.
    double blow_up_radius = 1e6;
};

/// One pass of the differential dynamics. When escaped is set, samples from
/// escape_index on are zeroed and carry no information.
struct PassResult {
    Signal state;   // dim n
    Signal output;  // dim m
    bool escaped = false;
    Index escape_index = -1;
};

/// Classical fixed-step RK4 over the system grid, realizing the pass
/// operator: chi' = f(chi, u, t) from chi(0) = chi0, w = g(chi, u, t)
/// sampled at the nodes. Inputs at RK4 half-steps are the averages of the
/// adjacent samples (linear interpolation).
PassResult integrate_pass(const DRPSystem& sys, const Vector& chi0, const Signal& u,
                          const PassOptions& options = {});

/// Returns the result unchanged or throws EscapeError with the first bad
/// grid index.
const PassResult& require_no_escape(const PassResult& result);
PassResult require_no_escape(PassResult&& result);

struct LipschitzEstimate {
    double state_gain = 0.0;   // max ratio sup|d_chi| / (sup|d_u| + |d_chi0|)
    double output_gain = 0.0;  // same for outputs
    Index probe_pairs = 0;
};

/// Empirical two-sided Lipschitz probe of the pass operator: draws `probes`
/// seeded pairs (chi0, u) with max_abs(chi0) + sup_norm(u) < delta_bar
/// (inputs are random cubic polynomials), integrates each, and returns the
/// worst difference-quotient over all probe pairs. Throws EscapeError if any
/// probe escapes (delta_bar too large for the system's bounded region).
LipschitzEstimate estimate_lipschitz(const DRPSystem& sys, double delta_bar, Index probes,
                                     std::uint64_t seed, const PassOptions& options = {});

/// Random degree <= 3 polynomial signal with sup norm exactly `amplitude`;
/// the probe-signal family used by the Lipschitz and residual probes.
Signal random_polynomial_signal(const TimeGrid& grid, Index dim, double amplitude, Rng& rng);

/// Random vector with max_abs norm exactly `radius`.
Vector random_ball_vector(Index dim, double radius, Rng& rng);

}  // namespace drp
