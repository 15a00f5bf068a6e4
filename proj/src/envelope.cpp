#include "osc/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "osc/errors.hpp"

namespace osc {

namespace {

double tensor_sum(std::span<const double> values, std::span<const double> wx, std::span<const double> wy,
                  std::size_t stride_x, std::size_t stride_y, std::size_t ny) {
    double total = 0.0;
    for (std::size_t i = 0; i < wx.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < wy.size(); ++j)
            row += wy[j] * std::abs(values[(i * stride_x) * ny + j * stride_y]);
        total += wx[i] * row;
    }
    return total;
}

std::vector<double> trapezoid_weights(std::span<const double> g) {
    std::vector<double> w(g.size(), 0.0);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double h = g[i + 1] - g[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

std::vector<double> every_other(std::span<const double> g) {
    std::vector<double> out;
    for (std::size_t i = 0; i < g.size(); i += 2) out.push_back(g[i]);
    return out;
}

void check_weights(const ConcomitantCdfTable& table, const WeightVector& p) {
    if (p.size() != static_cast<std::size_t>(table.n))
        throw DimensionError("weight vector length " + std::to_string(p.size()) +
                             " does not match table n = " + std::to_string(table.n));
}

std::vector<double> mixture(const ConcomitantCdfTable& table, const WeightVector& p, bool reversed) {
    check_weights(table, p);
    const std::size_t cells = table.nx() * table.ny();
    std::vector<double> out(cells, 0.0);
    for (int i = 1; i <= table.n; ++i) {
        const int r = reversed ? table.n - i + 1 : i;
        const double w = p[static_cast<std::size_t>(i - 1)];
        const double* row = table.values.data() + table.index(r, 0, 0);
        for (std::size_t c = 0; c < cells; ++c) out[c] += w * row[c];
    }
    return out;
}

double max_diff(std::span<const double> a, std::span<const double> b) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < a.size(); ++c) worst = std::max(worst, a[c] - b[c]);
    return worst;
}

}  // namespace

std::vector<double> simpson_weights(std::span<const double> g) {
    if (g.size() < 2) throw DimensionError("simpson_weights: need at least two abscissae");
    std::vector<double> w(g.size(), 0.0);
    std::size_t i = 0;
    for (; i + 2 < g.size(); i += 2) {
        const double h0 = g[i + 1] - g[i];
        const double h1 = g[i + 2] - g[i + 1];
        const double s = h0 + h1;
        w[i] += s / 6.0 * (2.0 - h1 / h0);
        w[i + 1] += s * s * s / (6.0 * h0 * h1);
        w[i + 2] += s / 6.0 * (2.0 - h0 / h1);
    }
    if (i + 1 < g.size()) {
        const double h = g[i + 1] - g[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

L1Estimate integrate_abs(std::span<const double> values, std::span<const double> gx,
                         std::span<const double> gy, const L1Options& opts) {
    if (values.size() != gx.size() * gy.size()) throw DimensionError("integrate_abs: grid size mismatch");
    const auto wx = simpson_weights(gx);
    const auto wy = simpson_weights(gy);
    L1Estimate est;
    est.value = tensor_sum(values, wx, wy, 1, 1, gy.size());

    const bool halvable = gx.size() >= 5 && gy.size() >= 5 && (gx.size() - 1) % 4 == 0 &&
                          (gy.size() - 1) % 4 == 0;
    if (halvable) {
        const auto cx = every_other(gx);
        const auto cy = every_other(gy);
        const double coarse = tensor_sum(values, simpson_weights(cx), simpson_weights(cy), 2, 2, gy.size());
        est.error_estimate = std::abs(est.value - coarse) / 15.0;
    } else {
        const double trap = tensor_sum(values, trapezoid_weights(gx), trapezoid_weights(gy), 1, 1, gy.size());
        est.error_estimate = std::abs(est.value - trap);
    }
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(est.value));
    if (est.error_estimate > target)
        throw AccuracyError("grid too coarse to certify the L1 integral: estimate " +
                                std::to_string(est.error_estimate) + " > " + std::to_string(target),
                            est.error_estimate);
    return est;
}

std::vector<double> upper_envelope(const ConcomitantCdfTable& table, const WeightVector& p) {
    return mixture(table, p, false);
}

std::vector<double> lower_envelope(const ConcomitantCdfTable& table, const WeightVector& p) {
    return mixture(table, p, true);
}

std::vector<double> rank_average(const ConcomitantCdfTable& table) {
    return upper_envelope(table, WeightVector::uniform(static_cast<std::size_t>(table.n)));
}

EnvelopePair make_envelope_pair(const ConcomitantCdfTable& table, std::span<const double> truth,
                                const WeightVector& p, std::int64_t m, const L1Options& opts) {
    if (truth.size() != table.nx() * table.ny()) throw DimensionError("truth grid size mismatch");
    EnvelopePair pair;
    pair.m = m;
    pair.grid_x = table.grid_x;
    pair.grid_y = table.grid_y;
    pair.lower = lower_envelope(table, p);
    pair.upper = upper_envelope(table, p);
    pair.truth.assign(truth.begin(), truth.end());
    pair.max_gap = std::max(0.0, max_diff(pair.upper, pair.lower));
    const auto l1 = l1_gap(pair, opts);
    pair.l1_gap = l1.value;
    pair.l1_error = l1.error_estimate;
    return pair;
}

EnvelopePair make_envelope_pair(const ConcomitantCdfTable& table, std::span<const double> truth,
                                std::int64_t m, const L1Options& opts) {
    return make_envelope_pair(table, truth, weight_sequence(table.n, m), m, opts);
}

SandwichReport sandwich_check(const EnvelopePair& pair, double slack) {
    SandwichReport rep;
    rep.slack = slack;
    rep.lower_violation = std::max(0.0, max_diff(pair.lower, pair.truth));
    rep.upper_violation = std::max(0.0, max_diff(pair.truth, pair.upper));
    rep.passed = rep.lower_violation <= slack && rep.upper_violation <= slack;
    return rep;
}

double NestingReport::max_violation() const {
    return std::max({outer_lower_violation, inner_lower_violation, inner_upper_violation,
                     outer_upper_violation});
}

NestingReport nesting_check(const ConcomitantCdfTable& table, std::span<const double> truth,
                            const WeightVector& p, const WeightVector& q, double slack) {
    if (p.size() != q.size()) throw DimensionError("nesting_check: p and q lengths differ");
    if (!majorizes(p.values(), q.values()))
        throw ContractError("nesting_check: q does not majorize p");
    if (truth.size() != table.nx() * table.ny()) throw DimensionError("truth grid size mismatch");
    const auto hp = lower_envelope(table, p);
    const auto hq = lower_envelope(table, q);
    const auto kp = upper_envelope(table, p);
    const auto kq = upper_envelope(table, q);
    NestingReport rep;
    rep.slack = slack;
    rep.outer_lower_violation = std::max(0.0, max_diff(hq, hp));
    rep.inner_lower_violation = std::max(0.0, max_diff(hp, truth));
    rep.inner_upper_violation = std::max(0.0, max_diff(truth, kp));
    rep.outer_upper_violation = std::max(0.0, max_diff(kp, kq));
    rep.passed = rep.max_violation() <= slack;
    return rep;
}

NestingReport nesting_check(const ConcomitantCdfTable& table, const WeightVector& p, const WeightVector& q,
                            double slack) {
    const auto truth = rank_average(table);
    return nesting_check(table, truth, p, q, slack);
}

L1Estimate l1_gap(const EnvelopePair& pair, const L1Options& opts) {
    std::vector<double> diff(pair.upper.size());
    for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = pair.upper[c] - pair.lower[c];
    return integrate_abs(diff, pair.grid_x, pair.grid_y, opts);
}

L1Estimate c_n_constant(const ConcomitantCdfTable& table, const L1Options& opts) {
    L1Estimate total;
    const std::size_t cells = table.nx() * table.ny();
    std::vector<double> diff(cells);
    for (int i = 1; i <= table.n; ++i) {
        const int j = table.n - i + 1;
        if (i == j) continue;
        const double* a = table.values.data() + table.index(i, 0, 0);
        const double* b = table.values.data() + table.index(j, 0, 0);
        for (std::size_t c = 0; c < cells; ++c) diff[c] = a[c] - b[c];
        const auto part = integrate_abs(diff, table.grid_x, table.grid_y, opts);
        total.value += part.value;
        total.error_estimate += part.error_estimate;
    }
    return total;
}

double gap_bound(std::int64_t n, std::int64_t m, double c_n) {
    const auto p = weight_sequence(n, m);
    return (p[0] - 1.0 / static_cast<double>(n)) * c_n;
}

}  // namespace osc
