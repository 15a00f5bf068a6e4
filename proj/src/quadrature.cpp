#include "osc/quadrature.hpp"

#include <numbers>

namespace osc {

namespace {

// Newton iteration on P_15 in long double; converges to full double precision
// from the Chebyshev-like starting guesses.
GaussLegendre15 compute_rule() {
    constexpr int n = 15;
    GaussLegendre15 rule{};
    for (int i = 0; i < n; ++i) {
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        long double dp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1.0L;
            long double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const long double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        rule.nodes[i] = static_cast<double>(x);
        rule.weights[i] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
    }
    return rule;
}

}  // namespace

const GaussLegendre15& gauss_legendre_15() {
    static const GaussLegendre15 rule = compute_rule();
    return rule;
}

}  // namespace osc
