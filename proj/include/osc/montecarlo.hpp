#pragma once

#include <cstdint>
#include <json.hpp>
#include <span>
#include <utility>
#include <vector>

#include "osc/concomitant.hpp"
#include "osc/models.hpp"
#include "osc/rng.hpp"

namespace osc {

/// Below this many replicates the oracle comparison is reported but not gated.
inline constexpr std::uint64_t kMinOracleReps = 1000;

/// One (X, Y) draw by the conditional inverse method:
/// X = F_X^{-1}(U1), Y = F_{Y|X}^{-1}(U2 | X).
std::pair<double, double> sample_bivariate(const BivariateModel& model, Substream& rng);

/// Replicate `replicate` of an n-sample, sorted by X: element r-1 is
/// (X_{r:n}, Y_{[r:n]}). Ties in X keep the original sample order.
std::vector<std::pair<double, double>> draw_ordered_sample(const BivariateModel& model, int n,
                                                           std::uint64_t seed, std::uint64_t replicate);

struct SimulationRun {
    std::uint64_t seed = 0;
    std::uint64_t reps = 0;
    int n = 0;
    std::vector<double> grid_x;
    std::vector<double> grid_y;
    /// counts[(r-1, ix, iy)] = #{replicates with X_{r:n} <= x, Y_{[r:n]} <= y}.
    std::vector<std::uint64_t> counts;
    nlohmann::json model;

    std::size_t index(int r, std::size_t ix, std::size_t iy) const {
        return (static_cast<std::size_t>(r - 1) * grid_x.size() + ix) * grid_y.size() + iy;
    }
    std::uint64_t count(int r, std::size_t ix, std::size_t iy) const { return counts[index(r, ix, iy)]; }
    double empirical(int r, std::size_t ix, std::size_t iy) const {
        return static_cast<double>(count(r, ix, iy)) / static_cast<double>(reps);
    }
};

SimulationRun run_simulation(const BivariateModel& model, int n, std::uint64_t reps, std::uint64_t seed,
                             std::span<const double> grid_x, std::span<const double> grid_y,
                             unsigned threads = 0);

/// Processes replicates in the given order; used to check scheduling
/// independence of the tallies.
SimulationRun run_simulation_in_order(const BivariateModel& model, int n, std::uint64_t seed,
                                      std::span<const double> grid_x, std::span<const double> grid_y,
                                      std::span<const std::uint64_t> replicate_order);

struct OracleComparison {
    int r = 0;
    double x = 0.0;
    double y = 0.0;
    double quadrature = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double z = 0.0;
    bool within = false;
};

struct OracleReport {
    std::vector<OracleComparison> comparisons;
    double coverage = 0.0;
    double z_limit = 3.0;
    double coverage_required = 0.95;
    bool sufficient_resolution = false;
    bool agreement = false;
    /// agreement, or insufficient resolution (reported as a warning).
    bool passed = false;
};

/// Compares empirical and quadrature cdfs cell by cell; the binomial
/// standard error is taken under the quadrature value.
OracleReport compare_with_table(const SimulationRun& run, const ConcomitantCdfTable& table,
                                double z_limit = 3.0, double coverage_required = 0.95);

nlohmann::json to_json(const SimulationRun& run);
nlohmann::json to_json(const OracleReport& report);

}  // namespace osc
