#include "osc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "osc/errors.hpp"

namespace osc {

namespace {

void check_simulation_args(int n, std::span<const double> gx, std::span<const double> gy) {
    if (n < 1) throw DomainError("simulation needs n >= 1");
    if (gx.empty() || gy.empty()) throw DimensionError("simulation grid is empty");
}

// Adds one replicate's corner increments: the cell (ix, iy) of the first grid
// point dominating (X_{r:n}, Y_{[r:n]}). Prefix sums turn these into counts.
void tally(const BivariateModel& model, int n, std::uint64_t seed, std::uint64_t rep,
           std::span<const double> gx, std::span<const double> gy, std::vector<std::uint64_t>& corner) {
    const auto sample = draw_ordered_sample(model, n, seed, rep);
    for (int r = 1; r <= n; ++r) {
        const auto [x, y] = sample[static_cast<std::size_t>(r - 1)];
        const auto ix = static_cast<std::size_t>(std::lower_bound(gx.begin(), gx.end(), x) - gx.begin());
        const auto iy = static_cast<std::size_t>(std::lower_bound(gy.begin(), gy.end(), y) - gy.begin());
        if (ix == gx.size() || iy == gy.size()) continue;
        ++corner[(static_cast<std::size_t>(r - 1) * gx.size() + ix) * gy.size() + iy];
    }
}

SimulationRun finish(const BivariateModel& model, int n, std::uint64_t reps, std::uint64_t seed,
                     std::span<const double> gx, std::span<const double> gy, std::vector<std::uint64_t> counts) {
    const std::size_t nx = gx.size();
    const std::size_t ny = gy.size();
    for (int r = 0; r < n; ++r) {
        std::uint64_t* base = counts.data() + static_cast<std::size_t>(r) * nx * ny;
        for (std::size_t ix = 0; ix < nx; ++ix)
            for (std::size_t iy = 1; iy < ny; ++iy) base[ix * ny + iy] += base[ix * ny + iy - 1];
        for (std::size_t ix = 1; ix < nx; ++ix)
            for (std::size_t iy = 0; iy < ny; ++iy) base[ix * ny + iy] += base[(ix - 1) * ny + iy];
    }
    SimulationRun run;
    run.seed = seed;
    run.reps = reps;
    run.n = n;
    run.grid_x.assign(gx.begin(), gx.end());
    run.grid_y.assign(gy.begin(), gy.end());
    run.counts = std::move(counts);
    run.model = model.descriptor();
    return run;
}

}  // namespace

std::pair<double, double> sample_bivariate(const BivariateModel& model, Substream& rng) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double x = model.marginal_quantile_x(u1);
    return {x, model.conditional_quantile_y(x, u2)};
}

std::vector<std::pair<double, double>> draw_ordered_sample(const BivariateModel& model, int n,
                                                           std::uint64_t seed, std::uint64_t replicate) {
    Substream rng(seed, replicate);
    std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) p = sample_bivariate(model, rng);
    // stable_sort keeps the original index order among equal X values.
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return pts;
}

SimulationRun run_simulation(const BivariateModel& model, int n, std::uint64_t reps, std::uint64_t seed,
                             std::span<const double> gx, std::span<const double> gy, unsigned threads) {
    check_simulation_args(n, gx, gy);
    if (reps < 1) throw DomainError("simulation needs reps >= 1");
    const std::size_t cells = static_cast<std::size_t>(n) * gx.size() * gy.size();

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, reps));
    std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(cells, 0));
    auto work = [&](unsigned t) {
        const std::uint64_t lo = reps * t / threads;
        const std::uint64_t hi = reps * (t + 1) / threads;
        for (std::uint64_t rep = lo; rep < hi; ++rep) tally(model, n, seed, rep, gx, gy, partial[t]);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    std::vector<std::uint64_t> counts(cells, 0);
    for (const auto& p : partial)
        for (std::size_t c = 0; c < cells; ++c) counts[c] += p[c];
    return finish(model, n, reps, seed, gx, gy, std::move(counts));
}

SimulationRun run_simulation_in_order(const BivariateModel& model, int n, std::uint64_t seed,
                                      std::span<const double> gx, std::span<const double> gy,
                                      std::span<const std::uint64_t> order) {
    check_simulation_args(n, gx, gy);
    if (order.empty()) throw DomainError("simulation needs reps >= 1");
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) * gx.size() * gy.size(), 0);
    for (std::uint64_t rep : order) tally(model, n, seed, rep, gx, gy, counts);
    return finish(model, n, order.size(), seed, gx, gy, std::move(counts));
}

OracleReport compare_with_table(const SimulationRun& run, const ConcomitantCdfTable& table, double z_limit,
                                double coverage_required) {
    if (run.n != table.n || run.grid_x != table.grid_x || run.grid_y != table.grid_y)
        throw DimensionError("compare_with_table: simulation and table grids differ");
    OracleReport rep;
    rep.z_limit = z_limit;
    rep.coverage_required = coverage_required;
    const double reps = static_cast<double>(run.reps);
    std::size_t hits = 0;
    for (int r = 1; r <= run.n; ++r)
        for (std::size_t ix = 0; ix < run.grid_x.size(); ++ix)
            for (std::size_t iy = 0; iy < run.grid_y.size(); ++iy) {
                OracleComparison c;
                c.r = r;
                c.x = run.grid_x[ix];
                c.y = run.grid_y[iy];
                c.quadrature = std::clamp(table.at(r, ix, iy), 0.0, 1.0);
                c.empirical = run.empirical(r, ix, iy);
                c.std_error = std::sqrt(c.quadrature * (1.0 - c.quadrature) / reps);
                const double dev = std::abs(c.empirical - c.quadrature);
                if (c.std_error > 0.0) {
                    c.z = dev / c.std_error;
                    c.within = c.z <= z_limit;
                } else {
                    c.z = dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
                    c.within = dev == 0.0;
                }
                hits += c.within ? 1 : 0;
                rep.comparisons.push_back(c);
            }
    rep.coverage = static_cast<double>(hits) / static_cast<double>(rep.comparisons.size());
    rep.sufficient_resolution = run.reps >= kMinOracleReps;
    rep.agreement = rep.coverage >= coverage_required;
    rep.passed = rep.agreement || !rep.sufficient_resolution;
    return rep;
}

nlohmann::json to_json(const SimulationRun& run) {
    return {{"seed", run.seed},   {"reps", run.reps},     {"n", run.n},          {"model", run.model},
            {"grid_x", run.grid_x}, {"grid_y", run.grid_y}, {"counts", run.counts}};
}

nlohmann::json to_json(const OracleReport& report) {
    nlohmann::json j{{"coverage", report.coverage},
                     {"z_limit", report.z_limit},
                     {"coverage_required", report.coverage_required},
                     {"sufficient_resolution", report.sufficient_resolution},
                     {"agreement", report.agreement},
                     {"passed", report.passed},
                     {"comparisons", report.comparisons.size()}};
    if (!report.sufficient_resolution)
        j["warning"] = "insufficient resolution: reps below " + std::to_string(kMinOracleReps) +
                       ", agreement is not gated";
    return j;
}

}  // namespace osc
