#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <memory>
#include <vector>

#include "osc/concomitant.hpp"
#include "osc/models.hpp"
#include "osc/scenario.hpp"

namespace osc {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitUsage = 2 };

struct CommandResult {
    int exit_code = kExitPass;
    nlohmann::json report;
    std::vector<std::filesystem::path> files;
};

/// Model, grids, concomitant table and F on the grid for a scenario.
struct PreparedScenario {
    std::unique_ptr<BivariateModel> model;
    ScenarioGrids grids;
    ConcomitantCdfTable table;
    std::vector<double> truth;
};
PreparedScenario prepare_scenario(const ScenarioConfig& config);

/// Runs the ordering, mixture, sandwich, nesting, equality and rate checks.
CommandResult cmd_verify(const ScenarioConfig& config);
/// Writes envelope_m<m>.csv (x, y, H, F, K, gap) and envelope_m<m>.json.
CommandResult cmd_envelope(const ScenarioConfig& config, std::int64_t m);
/// Writes converge.csv (m, max_gap, l1_gap, gap_bound) and converge.json.
CommandResult cmd_converge(const ScenarioConfig& config);
/// Monte Carlo cross-check of the quadrature table.
CommandResult cmd_oracle(const ScenarioConfig& config);

}  // namespace osc
