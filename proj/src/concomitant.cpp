#include "osc/concomitant.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>

#include "osc/errors.hpp"

namespace osc {

namespace {

void check_rank(int r, int n) {
    if (n < 1 || n > kMaxSampleSize)
        throw DomainError("sample size n must lie in [1, " + std::to_string(kMaxSampleSize) + "]");
    if (r < 1 || r > n)
        throw DomainError("rank r = " + std::to_string(r) + " outside [1, " + std::to_string(n) + "]");
}

std::uint64_t binomial(int n, int k) {
    std::uint64_t c = 1;
    for (int j = 1; j <= k; ++j) c = c * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
    return c;
}

double upper_limit(const BivariateModel& model, double x) {
    const auto& w = model.window();
    return model.marginal_cdf_x(std::clamp(x, w.x_lo, w.x_hi));
}

}  // namespace

double log_rank_coefficient(int r, int n) {
    check_rank(r, n);
    return std::log(static_cast<double>(n)) + std::lgamma(n) - std::lgamma(r) - std::lgamma(n - r + 1);
}

double rank_coefficient(int r, int n) {
    check_rank(r, n);
    if (n <= 20) return static_cast<double>(static_cast<std::uint64_t>(n) * binomial(n - 1, r - 1));
    return std::exp(log_rank_coefficient(r, n));
}

VectorQuadratureResult concomitant_joint_cdf_all_ranks(const BivariateModel& model, int n, double x,
                                                       double y, const QuadratureOptions& opts) {
    check_rank(1, n);
    const auto dim = static_cast<std::size_t>(n);
    std::vector<double> coef(dim);
    for (int r = 1; r <= n; ++r)
        coef[r - 1] = n <= 20 ? rank_coefficient(r, n) : log_rank_coefficient(r, n);
    std::vector<double> tpow(dim);
    std::vector<double> spow(dim);

    auto integrand = [&](double t, double* out) {
        const double g = model.conditional_cdf_y(model.marginal_quantile_x(t), y);
        const double s = 1.0 - t;
        if (n <= 20) {
            tpow[0] = 1.0;
            spow[0] = 1.0;
            for (std::size_t k = 1; k < dim; ++k) {
                tpow[k] = tpow[k - 1] * t;
                spow[k] = spow[k - 1] * s;
            }
            for (std::size_t k = 0; k < dim; ++k) out[k] = coef[k] * tpow[k] * spow[dim - 1 - k] * g;
        } else {
            const double lt = std::log(t);
            const double ls = std::log1p(-t);
            for (std::size_t k = 0; k < dim; ++k)
                out[k] = std::exp(coef[k] + k * lt + (dim - 1 - k) * ls) * g;
        }
    };

    return integrate_adaptive(integrand, dim, 0.0, upper_limit(model, x), opts);
}

double concomitant_joint_cdf(const BivariateModel& model, int r, int n, double x, double y,
                             const QuadratureOptions& opts) {
    check_rank(r, n);
    const double b = n <= 20 ? rank_coefficient(r, n) : 0.0;
    const double lb = log_rank_coefficient(r, n);
    auto integrand = [&](double t) {
        const double g = model.conditional_cdf_y(model.marginal_quantile_x(t), y);
        if (n <= 20) return b * std::pow(t, r - 1) * std::pow(1.0 - t, n - r) * g;
        return std::exp(lb + (r - 1) * std::log(t) + (n - r) * std::log1p(-t)) * g;
    };
    return integrate_adaptive_scalar(integrand, 0.0, upper_limit(model, x), opts);
}

double order_stat_cdf(const BivariateModel& model, int r, int n, double x) {
    check_rank(r, n);
    const double p = model.marginal_cdf_x(x);
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    return boost::math::ibeta(static_cast<double>(r), static_cast<double>(n - r + 1), p);
}

std::vector<double> probability_grid(const Marginal& marginal, double lo, double hi, std::size_t count) {
    if (count < 2) throw DimensionError("grids need at least two points");
    const double plo = marginal.cdf(lo);
    const double phi = marginal.cdf(hi);
    std::vector<double> grid(count);
    grid.front() = lo;
    grid.back() = hi;
    for (std::size_t j = 1; j + 1 < count; ++j) {
        const double p = plo + (phi - plo) * static_cast<double>(j) / static_cast<double>(count - 1);
        grid[j] = marginal.quantile(p);
    }
    return grid;
}

std::vector<double> default_grid_x(const BivariateModel& model, std::size_t count) {
    return probability_grid(model.marginal_x(), model.window().x_lo, model.window().x_hi, count);
}

std::vector<double> default_grid_y(const BivariateModel& model, std::size_t count) {
    return probability_grid(model.marginal_y(), model.window().y_lo, model.window().y_hi, count);
}

ConcomitantCdfTable build_table(const BivariateModel& model, int n, std::span<const double> grid_x,
                                std::span<const double> grid_y, const QuadratureOptions& opts,
                                unsigned threads) {
    check_rank(1, n);
    if (grid_x.empty() || grid_y.empty()) throw DimensionError("build_table: empty grid");
    auto strictly_increasing = [](std::span<const double> g) {
        return std::adjacent_find(g.begin(), g.end(), std::greater_equal<>()) == g.end();
    };
    if (!strictly_increasing(grid_x) || !strictly_increasing(grid_y))
        throw DomainError("build_table: grids must be strictly increasing");
    const auto& w = model.window();
    if (grid_x.front() < w.x_lo || grid_x.back() > w.x_hi)
        throw DomainError("build_table: x grid leaves the support window");

    ConcomitantCdfTable table;
    table.n = n;
    table.grid_x.assign(grid_x.begin(), grid_x.end());
    table.grid_y.assign(grid_y.begin(), grid_y.end());
    table.values.assign(static_cast<std::size_t>(n) * grid_x.size() * grid_y.size(), 0.0);
    table.model = model.descriptor();

    const std::size_t rows = grid_x.size();
    std::vector<double> row_err(rows, 0.0);
    std::vector<std::exception_ptr> row_fail(rows);

    auto do_row = [&](std::size_t ix) {
        try {
            for (std::size_t iy = 0; iy < grid_y.size(); ++iy) {
                VectorQuadratureResult res;
                try {
                    res = concomitant_joint_cdf_all_ranks(model, n, grid_x[ix], grid_y[iy], opts);
                } catch (const AccuracyError& e) {
                    throw AccuracyError(std::string(e.what()) + " at x = " + std::to_string(grid_x[ix]) +
                                            ", y = " + std::to_string(grid_y[iy]),
                                        e.achieved_error());
                }
                for (int r = 1; r <= n; ++r) table.values[table.index(r, ix, iy)] = res.value[r - 1];
                row_err[ix] = std::max(row_err[ix], res.error);
            }
        } catch (...) {
            row_fail[ix] = std::current_exception();
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows));
    if (threads <= 1) {
        for (std::size_t ix = 0; ix < rows; ++ix) do_row(ix);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t ix = t; ix < rows; ix += threads) do_row(ix);
            });
    }
    for (auto& f : row_fail)
        if (f) std::rethrow_exception(f);
    table.tol = *std::max_element(row_err.begin(), row_err.end());
    return table;
}

std::vector<double> joint_cdf_grid(const BivariateModel& model, std::span<const double> grid_x,
                                   std::span<const double> grid_y) {
    std::vector<double> out;
    out.reserve(grid_x.size() * grid_y.size());
    for (double x : grid_x)
        for (double y : grid_y) out.push_back(model.joint_cdf(x, y));
    return out;
}

TableInvariantReport check_table(const ConcomitantCdfTable& t, std::span<const double> truth) {
    if (truth.size() != t.nx() * t.ny()) throw DimensionError("check_table: truth grid size mismatch");
    TableInvariantReport rep;
    for (int r = 1; r <= t.n; ++r)
        for (std::size_t ix = 0; ix < t.nx(); ++ix)
            for (std::size_t iy = 0; iy < t.ny(); ++iy) {
                const double v = t.at(r, ix, iy);
                rep.max_range_violation = std::max({rep.max_range_violation, -v, v - 1.0});
                if (ix > 0) rep.max_monotone_violation = std::max(rep.max_monotone_violation, t.at(r, ix - 1, iy) - v);
                if (iy > 0) rep.max_monotone_violation = std::max(rep.max_monotone_violation, t.at(r, ix, iy - 1) - v);
                if (r < t.n) rep.max_rank_violation = std::max(rep.max_rank_violation, t.at(r + 1, ix, iy) - v);
            }
    for (std::size_t ix = 0; ix < t.nx(); ++ix)
        for (std::size_t iy = 0; iy < t.ny(); ++iy) {
            double s = 0.0;
            for (int r = 1; r <= t.n; ++r) s += t.at(r, ix, iy);
            rep.max_mixture_error =
                std::max(rep.max_mixture_error, std::abs(s / t.n - truth[ix * t.ny() + iy]));
        }
    return rep;
}

}  // namespace osc
