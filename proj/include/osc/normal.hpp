#pragma once

// Standard normal helpers. The cdf goes through std::erfc; the quantile and
// Owen's T come from Boost.Math.

namespace osc::normal {

double pdf(double x);
double cdf(double x);
/// Upper tail 1 - cdf(x) without cancellation.
double ccdf(double x);
/// Inverse cdf on (0,1); throws DomainError outside.
double quantile(double t);

/// P{X <= h, Y <= k} for standard bivariate normal with correlation rho.
double bivariate_cdf(double h, double k, double rho);

}  // namespace osc::normal
