#pragma once

#include <functional>

#include "drplab/time_grid.hpp"
#include "drplab/types.hpp"

namespace drp {

/// Vector-valued trajectory sampled on a TimeGrid. Column i of samples()
/// holds the value at node t_i, so there are always intervals+1 columns.
class Signal {
public:
    /// Zero signal of the given dimension.
    Signal(const TimeGrid& grid, Index dim);

    /// Takes ownership of a dim x nodes sample matrix.
    Signal(const TimeGrid& grid, Matrix samples);

    static Signal constant(const TimeGrid& grid, const Vector& value);
    static Signal from_function(const TimeGrid& grid, Index dim,
                                const std::function<Vector(double)>& f);

    const TimeGrid& grid() const noexcept { return grid_; }
    Index dim() const noexcept { return samples_.rows(); }
    Index nodes() const noexcept { return samples_.cols(); }

    const Matrix& samples() const noexcept { return samples_; }
    Matrix& samples() noexcept { return samples_; }

    Vector sample(Index i) const { return samples_.col(i); }
    void set_sample(Index i, const Vector& v) { samples_.col(i) = v; }

    /// Max over nodes of the max-abs vector norm, i.e. the largest absolute
    /// sample entry.
    double sup_norm() const;

    bool all_finite() const;

    Signal& operator+=(const Signal& other);
    Signal& operator-=(const Signal& other);
    Signal& operator*=(double scale);

private:
    TimeGrid grid_;
    Matrix samples_;
};

Signal operator+(Signal lhs, const Signal& rhs);
Signal operator-(Signal lhs, const Signal& rhs);
Signal operator*(double scale, Signal s);

/// Discrete sup norm of the sampled trajectory.
double sup_norm(const Signal& s);

/// Linear interpolation of the sampled trajectory at an arbitrary time:
/// exact at nodes, the adjacent-sample average at half-steps.
Vector interpolate(const Signal& s, double t);

/// Stacks two signals on the same grid into one of dimension dim_a + dim_b.
Signal vstack(const Signal& top, const Signal& bottom);

}  // namespace drp
