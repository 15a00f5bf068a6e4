#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "osc/concomitant.hpp"
#include "osc/models.hpp"

namespace osc {

struct GridSpec {
    std::size_t nx = 101;
    std::size_t ny = 101;
    /// "probability" (equal steps in F, through the marginal quantile) or
    /// "linear" (equal steps in x over the window).
    std::string spacing = "probability";
    /// Explicit abscissae; override nx/ny/spacing when nonempty.
    std::vector<double> x;
    std::vector<double> y;

    bool operator==(const GridSpec&) const = default;
};

struct ScenarioConfig {
    nlohmann::json model = {{"id", "fgm"}, {"theta", 0.75}};
    int n = 5;
    std::vector<std::int64_t> m_sweep = {0, 1, 2, 4, 8, 16, 32, 64, 128, 256};
    GridSpec grid;
    double epsilon = kDefaultWindowEpsilon;
    double quad_tol = 1e-10;
    std::uint64_t seed = 20240607;
    std::uint64_t reps = 100000;
    /// Points per axis of the Monte Carlo comparison grid.
    std::size_t oracle_points = 5;
    /// 0 = hardware concurrency. Outputs never depend on it.
    unsigned threads = 0;
    std::string out_dir = "out";
    /// "csv", "json" or "both".
    std::string format = "both";
    /// Test hook: an arbitrary weight vector fed to the nesting check by verify.
    std::optional<std::vector<double>> inject_weights;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError on unknown keys, wrong types or invariant violations.
ScenarioConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioConfig& config);
void validate(const ScenarioConfig& config);

ScenarioConfig load_config(const std::filesystem::path& path);
void save_config(const ScenarioConfig& config, const std::filesystem::path& path);

struct ScenarioGrids {
    std::vector<double> x;
    std::vector<double> y;
};
ScenarioGrids make_grids(const BivariateModel& model, const GridSpec& spec);

/// Oracle grid: interior probability levels j / (k + 1), j = 1..k per axis.
ScenarioGrids make_oracle_grids(const BivariateModel& model, std::size_t points_per_axis);

}  // namespace osc
