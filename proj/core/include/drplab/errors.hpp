#pragma once

#include <stdexcept>
#include <string>

#include "drplab/types.hpp"

namespace drp {

/// A pass integration produced a non-finite sample or left the blow-up ball.
/// Carries the first offending grid node.
class EscapeError : public std::runtime_error {
public:
    EscapeError(const std::string& what, Index grid_index)
        : std::runtime_error(what + " (first bad grid index " +
                             std::to_string(grid_index) + ")"),
          grid_index_(grid_index) {}

    Index grid_index() const noexcept { return grid_index_; }

private:
    Index grid_index_;
};

/// A Jacobian sample came out non-finite. Carries the offending time and
/// matrix entry.
class LinearizationError : public std::runtime_error {
public:
    LinearizationError(const std::string& what, double time, Index row, Index col)
        : std::runtime_error(what + " at t=" + std::to_string(time) + ", entry (" +
                             std::to_string(row) + "," + std::to_string(col) + ")"),
          time_(time),
          row_(row),
          col_(col) {}

    double time() const noexcept { return time_; }
    Index row() const noexcept { return row_; }
    Index col() const noexcept { return col_; }

private:
    double time_;
    Index row_, col_;
};

/// Dense eigensolver failure or similar numerical breakdown.
class NumericalError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace drp
