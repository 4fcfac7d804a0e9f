#pragma once

#include <cmath>
#include <stdexcept>

#include "drplab/types.hpp"

namespace drp {

/// Uniform discretization of the pass horizon [0, T]: nodes t_i = i*h,
/// i = 0..N, with h = T/N.
class TimeGrid {
public:
    TimeGrid(double horizon, Index intervals)
        : horizon_(horizon), intervals_(intervals), step_(horizon / static_cast<double>(intervals)) {
        if (!(horizon > 0.0) || !std::isfinite(horizon))
            throw std::domain_error("TimeGrid: horizon must be finite and > 0");
        if (intervals < 1) throw std::domain_error("TimeGrid: need at least one interval");
        // h*N == T up to ulp-scale rounding of the division above.
        if (std::abs(step_ * static_cast<double>(intervals_) - horizon_) >
            16.0 * std::numeric_limits<double>::epsilon() * horizon_)
            throw std::domain_error("TimeGrid: step*intervals does not reproduce horizon");
    }

    double horizon() const noexcept { return horizon_; }
    Index intervals() const noexcept { return intervals_; }
    Index nodes() const noexcept { return intervals_ + 1; }
    double step() const noexcept { return step_; }
    double node(Index i) const noexcept { return step_ * static_cast<double>(i); }

    bool operator==(const TimeGrid& other) const noexcept {
        return horizon_ == other.horizon_ && intervals_ == other.intervals_;
    }

private:
    double horizon_;
    Index intervals_;
    double step_;
};

}  // namespace drp
