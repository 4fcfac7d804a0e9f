#pragma once

#include <string>
#include <vector>

namespace drplab_cli {

/// Self-contained semilog plot: one polyline of (k, values[k]) on a
/// log-scaled y axis, with decade gridlines and axis labels. Non-positive
/// values are dropped from the line. No external renderer involved.
std::string semilog_svg(const std::vector<double>& values, const std::string& title,
                        const std::string& x_label, const std::string& y_label);

}  // namespace drplab_cli
