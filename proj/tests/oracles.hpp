#pragma once

// Test-only reference values computed without the quadrature engine.

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace osc::oracle {

inline long double binom(int n, int k) {
    long double c = 1.0L;
    for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
    return c;
}

/// FGM with uniform marginals:
///   F_{r:n}(x, y) = B int_0^x t^{r-1} (1-t)^{n-r} [y + theta (1-2t) y (1-y)] dt,
/// with (1-t)^{n-r} expanded binomially and each monomial integrated exactly.
inline double fgm_concomitant_cdf(double theta, int r, int n, double x, double y) {
    const long double X = std::clamp(x, 0.0, 1.0);
    const long double Y = std::clamp(y, 0.0, 1.0);
    const long double c0 = Y + theta * Y * (1 - Y);   // coefficient of t^0 in the slice term
    const long double c1 = -2.0L * theta * Y * (1 - Y);  // coefficient of t^1
    const long double B = n * binom(n - 1, r - 1);
    long double sum = 0.0L;
    for (int k = 0; k <= n - r; ++k) {
        const long double a = binom(n - r, k) * ((k % 2) ? -1.0L : 1.0L);
        const int p = r - 1 + k;
        sum += a * (c0 * std::pow(X, p + 1) / (p + 1) + c1 * std::pow(X, p + 2) / (p + 2));
    }
    return static_cast<double>(B * sum);
}

/// P{X_{r:n} <= x} for a uniform parent, as a binomial tail.
inline double uniform_order_stat_cdf(int r, int n, double p) {
    long double s = 0.0L;
    for (int j = r; j <= n; ++j) s += binom(n, j) * std::pow((long double)p, j) * std::pow(1.0L - p, n - j);
    return static_cast<double>(s);
}

inline double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
inline double Phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Bivariate normal cdf by Gauss-Kronrod over u of phi(u) Phi((y - rho u)/s).
inline double bivariate_normal_by_quadrature(double x, double y, double rho) {
    const double s = std::sqrt(1.0 - rho * rho);
    auto f = [&](double u) { return phi(u) * Phi((y - rho * u) / s); };
    const double lo = -40.0;
    if (x <= lo) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, x, 15, 1e-14);
}

/// Exact FGM c_n: sum over ordered pairs of |E-differences|, using
///   iint F_{i:n} - F_{j:n} = (j - i)/(n + 1) * (1/2 + theta/6)  for i < j.
inline double fgm_c_n(double theta, int n) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += std::abs(n + 1 - 2 * i) / double(n + 1);
    return s * (0.5 + theta / 6.0);
}

/// Exact FGM Delta_m = sum_i ((n+1)/2 - i)/a_n(m) * (n+1-2i)/(n+1) * (1/2 + theta/6).
inline double fgm_l1_gap(double theta, int n, std::int64_t m) {
    const double a = double(n) * double(m) + n * (n + 1) / 2.0;
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += ((n + 1) / 2.0 - i) * (n + 1 - 2 * i) / double(n + 1);
    return s / a * (0.5 + theta / 6.0);
}

}  // namespace osc::oracle
