#include "drplab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drp {

namespace {

void require_same_shape(const Signal& a, const Signal& b) {
    if (!(a.grid() == b.grid()) || a.dim() != b.dim())
        throw std::invalid_argument("Signal: grid or dimension mismatch");
}

}  // namespace

Signal::Signal(const TimeGrid& grid, Index dim)
    : grid_(grid), samples_(Matrix::Zero(dim, grid.nodes())) {
    if (dim < 1) throw std::domain_error("Signal: dimension must be >= 1");
}

Signal::Signal(const TimeGrid& grid, Matrix samples) : grid_(grid), samples_(std::move(samples)) {
    if (samples_.rows() < 1) throw std::domain_error("Signal: dimension must be >= 1");
    if (samples_.cols() != grid.nodes())
        throw std::invalid_argument("Signal: sample count must equal intervals+1");
}

Signal Signal::constant(const TimeGrid& grid, const Vector& value) {
    Matrix m(value.size(), grid.nodes());
    m.colwise() = value;
    return Signal(grid, std::move(m));
}

Signal Signal::from_function(const TimeGrid& grid, Index dim,
                             const std::function<Vector(double)>& f) {
    Matrix m(dim, grid.nodes());
    for (Index i = 0; i < grid.nodes(); ++i) {
        Vector v = f(grid.node(i));
        if (v.size() != dim) throw std::invalid_argument("Signal: callback dimension mismatch");
        m.col(i) = v;
    }
    return Signal(grid, std::move(m));
}

double Signal::sup_norm() const { return samples_.cwiseAbs().maxCoeff(); }

bool Signal::all_finite() const { return samples_.allFinite(); }

Signal& Signal::operator+=(const Signal& other) {
    require_same_shape(*this, other);
    samples_ += other.samples_;
    return *this;
}

Signal& Signal::operator-=(const Signal& other) {
    require_same_shape(*this, other);
    samples_ -= other.samples_;
    return *this;
}

Signal& Signal::operator*=(double scale) {
    samples_ *= scale;
    return *this;
}

Signal operator+(Signal lhs, const Signal& rhs) { return lhs += rhs; }
Signal operator-(Signal lhs, const Signal& rhs) { return lhs -= rhs; }
Signal operator*(double scale, Signal s) { return s *= scale; }

double sup_norm(const Signal& s) { return s.sup_norm(); }

Vector interpolate(const Signal& s, double t) {
    const TimeGrid& grid = s.grid();
    const double position = t / grid.step();
    const Index i = std::clamp<Index>(static_cast<Index>(std::floor(position)), 0,
                                      grid.intervals() - 1);
    const double theta = position - static_cast<double>(i);
    if (theta <= 1e-12) return s.sample(i);
    if (theta >= 1.0 - 1e-12) return s.sample(i + 1);
    return (1.0 - theta) * s.sample(i) + theta * s.sample(i + 1);
}

Signal vstack(const Signal& top, const Signal& bottom) {
    if (!(top.grid() == bottom.grid()))
        throw std::invalid_argument("vstack: signals on different grids");
    Matrix m(top.dim() + bottom.dim(), top.nodes());
    m.topRows(top.dim()) = top.samples();
    m.bottomRows(bottom.dim()) = bottom.samples();
    return Signal(top.grid(), std::move(m));
}

}  // namespace drp
