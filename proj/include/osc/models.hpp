#pragma once

#include <memory>
#include <json.hpp>
#include <string>

namespace osc {

/// Default quantile truncation level for unbounded supports.
inline constexpr double kDefaultWindowEpsilon = 1e-6;

/// Evaluation rectangle; bounded sides use the true support, unbounded
/// sides the eps / 1-eps marginal quantiles.
struct Window {
    double x_lo = 0.0;
    double x_hi = 1.0;
    double y_lo = 0.0;
    double y_hi = 1.0;
};

enum class MarginalKind { uniform, exponential, normal };

MarginalKind parse_marginal_kind(const std::string& id);
std::string to_string(MarginalKind kind);

/// A continuous univariate law: Uniform(0,1), Exponential(rate) or N(0,1).
class Marginal {
public:
    explicit Marginal(MarginalKind kind, double rate = 1.0);

    MarginalKind kind() const noexcept { return kind_; }
    double rate() const noexcept { return rate_; }

    double pdf(double x) const;
    double cdf(double x) const;
    /// Exact inverse of cdf on (0,1).
    double quantile(double t) const;

    /// [lo, hi] of the support window at truncation level eps.
    double window_lo(double eps) const;
    double window_hi(double eps) const;

    nlohmann::json descriptor() const;

private:
    MarginalKind kind_;
    double rate_;
};

/// An absolutely continuous bivariate law (X, Y).
///
/// `conditional_cdf_y(u, y)` is P{Y <= y | X = u} = G(u, y) / f_X(u); it is
/// what the concomitant engine integrates after the substitution t = F_X(u),
/// and it stays well conditioned in the tails where both G and f_X vanish.
class BivariateModel {
public:
    explicit BivariateModel(Marginal mx, Marginal my, double eps);
    virtual ~BivariateModel() = default;

    virtual double joint_cdf(double x, double y) const = 0;
    virtual double joint_pdf(double x, double y) const = 0;
    virtual double conditional_cdf_y(double u, double y) const = 0;
    /// Inverse of conditional_cdf_y in y, for w in (0,1).
    virtual double conditional_quantile_y(double u, double w) const = 0;
    virtual nlohmann::json descriptor() const = 0;

    /// G(u, y) = integral of f(u, v) over v <= y. Throws DomainError when u is
    /// outside the X side of the support window.
    double slice_integral(double u, double y) const;

    double marginal_cdf_x(double x) const { return mx_.cdf(x); }
    double marginal_pdf_x(double x) const { return mx_.pdf(x); }
    /// Throws DomainError unless t lies in (0,1).
    double marginal_quantile_x(double t) const { return mx_.quantile(t); }

    const Marginal& marginal_x() const noexcept { return mx_; }
    const Marginal& marginal_y() const noexcept { return my_; }
    const Window& window() const noexcept { return window_; }
    double epsilon() const noexcept { return eps_; }

protected:
    Marginal mx_;
    Marginal my_;
    double eps_;
    Window window_;
};

/// Farlie-Gumbel-Morgenstern copula, C(u,v) = uv(1 + theta(1-u)(1-v)).
class FgmCopulaModel final : public BivariateModel {
public:
    explicit FgmCopulaModel(double theta, double eps = kDefaultWindowEpsilon);

    double theta() const noexcept { return theta_; }

    double joint_cdf(double x, double y) const override;
    double joint_pdf(double x, double y) const override;
    double conditional_cdf_y(double u, double y) const override;
    double conditional_quantile_y(double u, double w) const override;
    nlohmann::json descriptor() const override;

private:
    double theta_;
};

class IndependenceModel final : public BivariateModel {
public:
    IndependenceModel(Marginal mx, Marginal my, double eps = kDefaultWindowEpsilon);

    double joint_cdf(double x, double y) const override;
    double joint_pdf(double x, double y) const override;
    double conditional_cdf_y(double u, double y) const override;
    double conditional_quantile_y(double u, double w) const override;
    nlohmann::json descriptor() const override;
};

/// Standard normal marginals, Y | X = u ~ N(rho u, 1 - rho^2).
class GaussianConditionalModel final : public BivariateModel {
public:
    explicit GaussianConditionalModel(double rho, double eps = kDefaultWindowEpsilon);

    double rho() const noexcept { return rho_; }

    double joint_cdf(double x, double y) const override;
    double joint_pdf(double x, double y) const override;
    double conditional_cdf_y(double u, double y) const override;
    double conditional_quantile_y(double u, double w) const override;
    nlohmann::json descriptor() const override;

private:
    double rho_;
    double sigma_;
};

/// Builds a model from {"id": "fgm"|"independent"|"gaussian", ...}.
/// Throws ConfigError on unknown ids and DomainError on bad parameters.
std::unique_ptr<BivariateModel> make_model(const nlohmann::json& spec, double eps);

}  // namespace osc
