#include "scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace drplab_cli {

namespace {

using nlohmann::json;

std::string position_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config error at " + path + ": " + what);
}

void require_keys(const json& object, const std::string& path,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : object.items()) {
        bool known = false;
        for (const char* name : allowed)
            if (key == name) known = true;
        if (!known) fail(path + "/" + key, "unknown key");
    }
}

double as_number(const json& value, const std::string& path) {
    if (!value.is_number()) fail(path, "expected a number");
    return value.get<double>();
}

drp::Index as_count(const json& value, const std::string& path) {
    if (!value.is_number_integer()) fail(path, "expected an integer");
    const auto count = value.get<long long>();
    if (count < 0) fail(path, "expected a nonnegative integer");
    return static_cast<drp::Index>(count);
}

std::vector<double> as_vector(const json& value, const std::string& path) {
    if (!value.is_array() || value.empty()) fail(path, "expected a non-empty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i)
        out.push_back(as_number(value[i], path + "/" + std::to_string(i)));
    return out;
}

void apply_grid(const json& object, const std::string& path, GridConfig& grid) {
    require_keys(object, path, {"horizon", "intervals"});
    if (object.contains("horizon")) {
        grid.horizon = as_number(object["horizon"], path + "/horizon");
        if (!(grid.horizon > 0.0)) fail(path + "/horizon", "must be > 0");
    }
    if (object.contains("intervals")) {
        grid.intervals = as_count(object["intervals"], path + "/intervals");
        if (grid.intervals < 1) fail(path + "/intervals", "must be >= 1");
    }
}

void apply_profile(const json& object, const std::string& path, ProfileConfig& profile) {
    require_keys(object, path, {"kind", "value"});
    if (object.contains("kind")) {
        profile.kind = object["kind"].is_string() ? object["kind"].get<std::string>()
                                                  : (fail(path + "/kind", "expected a string"), "");
        if (profile.kind != "zero" && profile.kind != "constant")
            fail(path + "/kind", "expected \"zero\" or \"constant\"");
    }
    if (object.contains("value")) profile.value = as_vector(object["value"], path + "/value");
    if (profile.kind == "constant" && profile.value.empty())
        fail(path, "constant profile needs a value");
}

void apply_boundary_seq(const json& object, const std::string& path, BoundarySeqConfig& seq) {
    require_keys(object, path,
                 {"kind", "lambda", "lambda_range", "norm_bound", "amplitude", "limit"});
    if (object.contains("kind")) {
        if (!object["kind"].is_string()) fail(path + "/kind", "expected a string");
        seq.kind = object["kind"].get<std::string>();
        if (seq.kind != "zero" && seq.kind != "constant" && seq.kind != "e_lambda" &&
            seq.kind != "c0")
            fail(path + "/kind", "expected \"zero\", \"constant\", \"e_lambda\" or \"c0\"");
    }
    if (object.contains("lambda")) {
        seq.lambda = as_number(object["lambda"], path + "/lambda");
        if (!(*seq.lambda > 0.0 && *seq.lambda < 1.0))
            fail(path + "/lambda", "must lie in (0,1)");
    }
    if (object.contains("lambda_range")) {
        const auto range = as_vector(object["lambda_range"], path + "/lambda_range");
        if (range.size() != 2 || !(range[0] > 0.0) || !(range[1] < 1.0) || !(range[0] <= range[1]))
            fail(path + "/lambda_range", "expected [lo, hi] within (0,1)");
        seq.lambda_range = {range[0], range[1]};
    }
    if (object.contains("norm_bound")) {
        seq.norm_bound = as_number(object["norm_bound"], path + "/norm_bound");
        if (!(seq.norm_bound >= 0.0)) fail(path + "/norm_bound", "must be >= 0");
    }
    if (object.contains("amplitude")) {
        seq.amplitude = as_number(object["amplitude"], path + "/amplitude");
        if (!(seq.amplitude >= 0.0)) fail(path + "/amplitude", "must be >= 0");
    }
    if (object.contains("limit")) seq.limit = as_vector(object["limit"], path + "/limit");
}

void apply_output(const json& object, const std::string& path, OutputConfig& output) {
    require_keys(object, path, {"dir", "csv", "svg"});
    for (const char* key : {"dir", "csv", "svg"}) {
        if (!object.contains(key)) continue;
        if (!object[key].is_string()) fail(path + "/" + key, "expected a string");
    }
    if (object.contains("dir")) output.dir = object["dir"].get<std::string>();
    if (object.contains("csv")) output.csv = object["csv"].get<std::string>();
    if (object.contains("svg")) output.svg = object["svg"].get<std::string>();
}

void apply_overrides(const json& root, ScenarioConfig& config) {
    require_keys(root, "", {"scenario", "grid", "passes", "seed", "boundary", "solver", "output"});
    if (root.contains("grid")) {
        if (!root["grid"].is_object()) fail("/grid", "expected an object");
        apply_grid(root["grid"], "/grid", config.grid);
    }
    if (root.contains("passes")) {
        config.passes = as_count(root["passes"], "/passes");
        if (config.passes < 1) fail("/passes", "must be >= 1");
    }
    if (root.contains("seed")) {
        if (!root["seed"].is_number_integer() || root["seed"].get<long long>() < 0)
            fail("/seed", "expected a nonnegative integer");
        config.seed = root["seed"].get<std::uint64_t>();
    }
    if (root.contains("boundary")) {
        const json& boundary = root["boundary"];
        if (!boundary.is_object()) fail("/boundary", "expected an object");
        require_keys(boundary, "/boundary", {"y0", "x0"});
        if (boundary.contains("y0")) {
            if (!boundary["y0"].is_object()) fail("/boundary/y0", "expected an object");
            apply_profile(boundary["y0"], "/boundary/y0", config.y0);
        }
        if (boundary.contains("x0")) {
            if (!boundary["x0"].is_object()) fail("/boundary/x0", "expected an object");
            apply_boundary_seq(boundary["x0"], "/boundary/x0", config.x0);
        }
    }
    if (root.contains("solver")) {
        const json& solver = root["solver"];
        if (!solver.is_object()) fail("/solver", "expected an object");
        require_keys(solver, "/solver", {"blow_up_radius"});
        if (solver.contains("blow_up_radius")) {
            config.blow_up_radius = as_number(solver["blow_up_radius"], "/solver/blow_up_radius");
            if (!(config.blow_up_radius > 0.0)) fail("/solver/blow_up_radius", "must be > 0");
        }
    }
    if (root.contains("output")) {
        if (!root["output"].is_object()) fail("/output", "expected an object");
        apply_output(root["output"], "/output", config.output);
    }
}

}  // namespace

std::string ScenarioConfig::csv_path() const {
    return output.dir + "/" + (output.csv.empty() ? name + ".csv" : output.csv);
}

std::string ScenarioConfig::svg_path() const {
    return output.dir + "/" + (output.svg.empty() ? name + ".svg" : output.svg);
}

std::string ScenarioConfig::report_path() const {
    return output.dir + "/" + name + "-certificate.json";
}

std::vector<std::string> builtin_names() {
    return {"linear-stable", "linear-unstable", "vanderpol-ilc", "picard-exponential",
            "picard-vanderpol"};
}

ScenarioConfig builtin_scenario(const std::string& name) {
    ScenarioConfig config;
    config.name = name;
    if (name == "linear-stable" || name == "linear-unstable") {
        config.kind = ScenarioKind::simulate;
        config.grid = {1.0, 100};
        config.passes = 20;
        config.y0 = {"constant", {1.0}};
        config.x0.kind = "zero";
        config.x0.limit = {0.0};
    } else if (name == "vanderpol-ilc") {
        config.kind = ScenarioKind::ilc;
        config.grid = {2.0, 2000};
        config.passes = 10;
        config.x0.kind = "e_lambda";
        config.x0.norm_bound = 0.09;
        config.x0.limit = {0.1, 0.0};
    } else if (name == "picard-exponential") {
        config.kind = ScenarioKind::picard;
        config.grid = {1.0, 20000};
        config.passes = 10;
        config.x0.kind = "constant";
        config.x0.limit = {1.0};
    } else if (name == "picard-vanderpol") {
        config.kind = ScenarioKind::picard;
        config.grid = {0.5, 1000};
        config.passes = 25;
        config.x0.kind = "constant";
        config.x0.limit = {0.1, 0.0};
    } else {
        throw ConfigError("unknown scenario \"" + name + "\"");
    }
    return config;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& error) {
        throw ConfigError("config parse error in " + path + " at " +
                          position_of(text, error.byte) + ": " + error.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    if (!root.contains("scenario") || !root["scenario"].is_string())
        throw ConfigError("config needs a \"scenario\" string naming a builtin");

    ScenarioConfig config = builtin_scenario(root["scenario"].get<std::string>());
    apply_overrides(root, config);
    return config;
}

}  // namespace drplab_cli
