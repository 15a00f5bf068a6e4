#pragma once

#include <cstddef>
#include <json.hpp>
#include <span>
#include <vector>

#include "osc/models.hpp"
#include "osc/quadrature.hpp"

namespace osc {

inline constexpr int kMaxSampleSize = 64;

/// B = n * C(n-1, r-1); exact integer arithmetic for n <= 20, log-gamma above.
double rank_coefficient(int r, int n);
double log_rank_coefficient(int r, int n);

/// P{X_{r:n} <= x, Y_{[r:n]} <= y}, integrated in t = F_X(u):
///   B * int_0^{F_X(x)} t^{r-1} (1-t)^{n-r} P{Y <= y | X = F_X^{-1}(t)} dt.
/// x is clamped to the X side of the support window.
double concomitant_joint_cdf(const BivariateModel& model, int r, int n, double x, double y,
                             const QuadratureOptions& opts = {});

/// F_{r:n}(x, y) for every r = 1..n from one adaptive pass sharing the nodes.
VectorQuadratureResult concomitant_joint_cdf_all_ranks(const BivariateModel& model, int n, double x,
                                                       double y, const QuadratureOptions& opts = {});

/// P{X_{r:n} <= x} = I_{F_X(x)}(r, n - r + 1).
double order_stat_cdf(const BivariateModel& model, int r, int n, double x);

/// `count` abscissae equally spaced in probability between the window ends,
/// mapped through the marginal quantile. The first and last points are the
/// window ends themselves.
std::vector<double> probability_grid(const Marginal& marginal, double lo, double hi, std::size_t count);
std::vector<double> default_grid_x(const BivariateModel& model, std::size_t count);
std::vector<double> default_grid_y(const BivariateModel& model, std::size_t count);

/// Cached F_{r:n} on a rectangular grid, stored rank-major then x then y.
struct ConcomitantCdfTable {
    int n = 0;
    std::vector<double> grid_x;
    std::vector<double> grid_y;
    std::vector<double> values;
    /// Largest quadrature error estimate over all cells.
    double tol = 0.0;
    nlohmann::json model;

    std::size_t nx() const noexcept { return grid_x.size(); }
    std::size_t ny() const noexcept { return grid_y.size(); }
    std::size_t index(int r, std::size_t ix, std::size_t iy) const {
        return (static_cast<std::size_t>(r - 1) * nx() + ix) * ny() + iy;
    }
    double at(int r, std::size_t ix, std::size_t iy) const { return values[index(r, ix, iy)]; }
};

/// Evaluates every cell independently; output is bit-identical for any
/// `threads` value (0 picks hardware concurrency).
ConcomitantCdfTable build_table(const BivariateModel& model, int n, std::span<const double> grid_x,
                                std::span<const double> grid_y, const QuadratureOptions& opts = {},
                                unsigned threads = 0);

/// F(x, y) sampled on the table grid, x-major.
std::vector<double> joint_cdf_grid(const BivariateModel& model, std::span<const double> grid_x,
                                   std::span<const double> grid_y);

struct TableInvariantReport {
    double max_range_violation = 0.0;     // below 0 or above 1 + 1e-9
    double max_monotone_violation = 0.0;  // decrease along x or y
    double max_rank_violation = 0.0;      // F_{r+1:n} - F_{r:n} when positive
    double max_mixture_error = 0.0;       // |(1/n) sum_r F_{r:n} - F|
};
TableInvariantReport check_table(const ConcomitantCdfTable& table, std::span<const double> truth);

}  // namespace osc
