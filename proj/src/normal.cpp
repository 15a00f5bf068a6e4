#include "osc/normal.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/owens_t.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "osc/errors.hpp"

namespace osc::normal {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
}  // namespace

double pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double ccdf(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double quantile(double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("normal quantile: level must lie in (0,1)");
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * t);
}

double bivariate_cdf(double h, double k, double rho) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (h == -inf || k == -inf) return 0.0;
    if (h == inf) return cdf(k);
    if (k == inf) return cdf(h);
    if (rho == 0.0) return cdf(h) * cdf(k);

    const double s = std::sqrt((1.0 - rho) * (1.0 + rho));
    if (h == 0.0 && k == 0.0) return 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
    if (h == 0.0) return 0.5 * cdf(k) + boost::math::owens_t(k, rho / s);
    if (k == 0.0) return 0.5 * cdf(h) + boost::math::owens_t(h, rho / s);

    const double th = boost::math::owens_t(h, (k - rho * h) / (h * s));
    const double tk = boost::math::owens_t(k, (h - rho * k) / (k * s));
    const double beta = (h * k < 0.0) ? 0.5 : 0.0;
    const double v = 0.5 * cdf(h) + 0.5 * cdf(k) - th - tk - beta;
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace osc::normal
