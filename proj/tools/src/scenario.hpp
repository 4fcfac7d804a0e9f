#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drplab/types.hpp"

namespace drplab_cli {

/// Configuration rejected: unknown key, bad type, bad value, or unreadable
/// file. The message carries a line/column position for parse errors and a
/// JSON-pointer-style path for schema violations.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ScenarioKind { simulate, ilc, picard };

struct GridConfig {
    double horizon = 1.0;
    drp::Index intervals = 100;
};

struct ProfileConfig {
    // "zero" or "constant" (with value).
    std::string kind = "zero";
    std::vector<double> value;
};

struct BoundarySeqConfig {
    // "zero", "constant", "e_lambda" or "c0".
    std::string kind = "zero";
    std::optional<double> lambda;                  // fixed rate, when set
    std::array<double, 2> lambda_range{0.2, 0.95};  // sampled rate otherwise
    double norm_bound = 0.0;
    double amplitude = 0.0;  // c0 generator
    std::vector<double> limit;
};

struct OutputConfig {
    std::string dir = "out";
    std::string csv;  // default <scenario>.csv
    std::string svg;  // default <scenario>.svg
};

struct ScenarioConfig {
    std::string name;
    ScenarioKind kind = ScenarioKind::simulate;
    GridConfig grid;
    drp::Index passes = 10;
    std::uint64_t seed = 1;
    ProfileConfig y0;
    BoundarySeqConfig x0;
    double blow_up_radius = 1e6;
    OutputConfig output;

    std::string csv_path() const;
    std::string svg_path() const;
    std::string report_path() const;
};

/// Names of the scenarios shipped with the tool.
std::vector<std::string> builtin_names();

/// The registry entry for a builtin scenario. Throws ConfigError for an
/// unknown name.
ScenarioConfig builtin_scenario(const std::string& name);

/// Loads a scenario file: the "scenario" field selects the builtin base and
/// every other field overrides it. Unknown keys are rejected anywhere.
ScenarioConfig load_scenario_file(const std::string& path);

}  // namespace drplab_cli
