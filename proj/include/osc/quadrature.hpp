#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "osc/errors.hpp"

namespace osc {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    std::size_t max_panels = std::size_t{1} << 14;
};

struct VectorQuadratureResult {
    std::vector<double> value;
    /// Sum over panels of the per-panel error estimate (max over components).
    double error = 0.0;
    /// Component carrying the largest error in the final partition.
    std::size_t worst_component = 0;
    std::size_t panels = 0;
};

/// 15-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre15 {
    std::array<double, 15> nodes;
    std::array<double, 15> weights;
};
const GaussLegendre15& gauss_legendre_15();

/// Adaptive composite Gauss-Legendre for a vector-valued integrand on [a, b].
///
/// Each panel is estimated twice: once as a single 15-point panel and once as
/// the sum of its two halves; the difference (max-norm over components) is the
/// panel error and the two-half value is kept. The panel with the largest
/// error is bisected until the summed error drops below `abs_tol`. Hitting
/// `max_panels` first raises AccuracyError carrying the achieved estimate.
///
/// `f(t, out)` writes `dim` values to `out`.
template <class Integrand>
VectorQuadratureResult integrate_adaptive(Integrand&& f, std::size_t dim, double a, double b,
                                          const QuadratureOptions& opts = {}) {
    VectorQuadratureResult result;
    result.value.assign(dim, 0.0);
    if (!(b > a) || dim == 0) return result;

    const auto& rule = gauss_legendre_15();
    std::vector<double> buf(dim);

    // Single-panel rule, accumulated into out[0..dim).
    auto panel_rule = [&](double lo, double hi, double* out) {
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        std::fill(out, out + dim, 0.0);
        for (std::size_t k = 0; k < 15; ++k) {
            f(mid + half * rule.nodes[k], buf.data());
            const double w = half * rule.weights[k];
            for (std::size_t c = 0; c < dim; ++c) out[c] += w * buf[c];
        }
    };

    struct Panel {
        double lo, hi, err;
        std::size_t worst;
        std::vector<double> whole;  // single-panel estimate over [lo, hi]
        std::vector<double> left;   // estimate over [lo, mid]
        std::vector<double> right;  // estimate over [mid, hi]
    };
    std::vector<Panel> panels;
    panels.reserve(64);

    auto refine = [&](Panel& p) {
        const double mid = 0.5 * (p.lo + p.hi);
        p.left.resize(dim);
        p.right.resize(dim);
        panel_rule(p.lo, mid, p.left.data());
        panel_rule(mid, p.hi, p.right.data());
        p.err = 0.0;
        p.worst = 0;
        for (std::size_t c = 0; c < dim; ++c) {
            const double e = std::abs(p.left[c] + p.right[c] - p.whole[c]);
            if (e > p.err) {
                p.err = e;
                p.worst = c;
            }
        }
    };

    {
        Panel root{a, b, 0.0, 0, std::vector<double>(dim), {}, {}};
        panel_rule(a, b, root.whole.data());
        refine(root);
        panels.push_back(std::move(root));
    }

    auto by_error = [&](std::size_t i, std::size_t j) {
        if (panels[i].err != panels[j].err) return panels[i].err < panels[j].err;
        return i > j;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> queue(by_error);
    queue.push(0);
    double total_err = panels[0].err;

    while (total_err > opts.abs_tol) {
        if (panels.size() >= opts.max_panels) {
            throw AccuracyError("adaptive quadrature hit the panel cap (" +
                                    std::to_string(opts.max_panels) + ") with error estimate " +
                                    std::to_string(total_err),
                                total_err);
        }
        const std::size_t idx = queue.top();
        queue.pop();
        const double mid = 0.5 * (panels[idx].lo + panels[idx].hi);
        Panel lhs{panels[idx].lo, mid, 0.0, 0, std::move(panels[idx].left), {}, {}};
        Panel rhs{mid, panels[idx].hi, 0.0, 0, std::move(panels[idx].right), {}, {}};
        total_err -= panels[idx].err;
        refine(lhs);
        refine(rhs);
        total_err += lhs.err + rhs.err;
        panels[idx] = std::move(lhs);
        panels.push_back(std::move(rhs));
        queue.push(idx);
        queue.push(panels.size() - 1);
    }

    std::vector<std::size_t> order(panels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return panels[i].lo < panels[j].lo; });
    double worst_err = -1.0;
    for (std::size_t i : order) {
        const auto& p = panels[i];
        for (std::size_t c = 0; c < dim; ++c) result.value[c] += p.left[c] + p.right[c];
        if (p.err > worst_err) {
            worst_err = p.err;
            result.worst_component = p.worst;
        }
    }
    result.error = total_err > 0.0 ? total_err : 0.0;
    result.panels = panels.size();
    return result;
}

/// Scalar convenience wrapper.
template <class Integrand>
double integrate_adaptive_scalar(Integrand&& f, double a, double b, const QuadratureOptions& opts = {},
                                 double* error = nullptr) {
    auto r = integrate_adaptive([&](double t, double* out) { out[0] = f(t); }, 1, a, b, opts);
    if (error) *error = r.error;
    return r.value[0];
}

}  // namespace osc
