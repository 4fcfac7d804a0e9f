#pragma once

#include <Eigen/Dense>

namespace drp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Max-abs norm of a vector. This is the fixed vector norm of the whole
/// library: it makes induced operator norms exactly computable as max
/// absolute row sums.
inline double max_abs(const Vector& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

/// Induced operator norm for the max-abs vector norm: max absolute row sum.
inline double induced_inf_norm(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace drp
