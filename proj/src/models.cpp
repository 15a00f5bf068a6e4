#include "osc/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "osc/errors.hpp"
#include "osc/normal.hpp"

namespace osc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_epsilon(double eps) {
    if (!(eps > 0.0 && eps <= 0.01)) throw DomainError("window epsilon must lie in (0, 0.01]");
}

}  // namespace

MarginalKind parse_marginal_kind(const std::string& id) {
    if (id == "uniform") return MarginalKind::uniform;
    if (id == "exponential") return MarginalKind::exponential;
    if (id == "normal") return MarginalKind::normal;
    throw ConfigError("unknown marginal id '" + id + "'");
}

std::string to_string(MarginalKind kind) {
    switch (kind) {
        case MarginalKind::uniform: return "uniform";
        case MarginalKind::exponential: return "exponential";
        case MarginalKind::normal: return "normal";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Marginal

Marginal::Marginal(MarginalKind kind, double rate) : kind_(kind), rate_(rate) {
    if (kind_ == MarginalKind::exponential && !(rate_ > 0.0 && std::isfinite(rate_)))
        throw DomainError("exponential rate must be positive and finite");
    if (kind_ != MarginalKind::exponential) rate_ = 1.0;
}

double Marginal::pdf(double x) const {
    switch (kind_) {
        case MarginalKind::uniform: return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
        case MarginalKind::exponential: return x >= 0.0 ? rate_ * std::exp(-rate_ * x) : 0.0;
        case MarginalKind::normal: return normal::pdf(x);
    }
    return 0.0;
}

double Marginal::cdf(double x) const {
    switch (kind_) {
        case MarginalKind::uniform: return std::clamp(x, 0.0, 1.0);
        case MarginalKind::exponential: return x > 0.0 ? -std::expm1(-rate_ * x) : 0.0;
        case MarginalKind::normal: return normal::cdf(x);
    }
    return 0.0;
}

double Marginal::quantile(double t) const {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("marginal quantile: level must lie in (0,1)");
    switch (kind_) {
        case MarginalKind::uniform: return t;
        case MarginalKind::exponential: return -std::log1p(-t) / rate_;
        case MarginalKind::normal: return normal::quantile(t);
    }
    return 0.0;
}

double Marginal::window_lo(double eps) const {
    return kind_ == MarginalKind::normal ? quantile(eps) : 0.0;
}

double Marginal::window_hi(double eps) const {
    return kind_ == MarginalKind::uniform ? 1.0 : quantile(1.0 - eps);
}

nlohmann::json Marginal::descriptor() const {
    nlohmann::json j{{"kind", to_string(kind_)}};
    if (kind_ == MarginalKind::exponential) j["rate"] = rate_;
    return j;
}

// ---------------------------------------------------------------------------
// BivariateModel

BivariateModel::BivariateModel(Marginal mx, Marginal my, double eps)
    : mx_(mx), my_(my), eps_(eps) {
    check_epsilon(eps);
    window_ = Window{mx_.window_lo(eps), mx_.window_hi(eps), my_.window_lo(eps), my_.window_hi(eps)};
}

double BivariateModel::slice_integral(double u, double y) const {
    if (!(u >= window_.x_lo && u <= window_.x_hi))
        throw DomainError("slice_integral: u outside the support window");
    return mx_.pdf(u) * conditional_cdf_y(u, y);
}

// ---------------------------------------------------------------------------
// FGM

FgmCopulaModel::FgmCopulaModel(double theta, double eps)
    : BivariateModel(Marginal(MarginalKind::uniform), Marginal(MarginalKind::uniform), eps),
      theta_(theta) {
    if (!(theta >= -1.0 && theta <= 1.0)) throw DomainError("FGM theta must lie in [-1, 1]");
}

double FgmCopulaModel::joint_cdf(double x, double y) const {
    const double u = std::clamp(x, 0.0, 1.0);
    const double v = std::clamp(y, 0.0, 1.0);
    return u * v * (1.0 + theta_ * (1.0 - u) * (1.0 - v));
}

double FgmCopulaModel::joint_pdf(double x, double y) const {
    if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) return 0.0;
    return 1.0 + theta_ * (1.0 - 2.0 * x) * (1.0 - 2.0 * y);
}

double FgmCopulaModel::conditional_cdf_y(double u, double y) const {
    const double v = std::clamp(y, 0.0, 1.0);
    return v + theta_ * (1.0 - 2.0 * u) * v * (1.0 - v);
}

double FgmCopulaModel::conditional_quantile_y(double u, double w) const {
    const double a = theta_ * (1.0 - 2.0 * u);
    if (std::abs(a) < 1e-12) return w;
    // Root in [0,1] of a v^2 - (1 + a) v + w = 0, written without the
    // (1 + a) - sqrt(...) cancellation.
    const double b = 1.0 + a;
    return 2.0 * w / (b + std::sqrt(b * b - 4.0 * a * w));
}

nlohmann::json FgmCopulaModel::descriptor() const {
    return {{"id", "fgm"}, {"theta", theta_}, {"epsilon", eps_}};
}

// ---------------------------------------------------------------------------
// Independence

IndependenceModel::IndependenceModel(Marginal mx, Marginal my, double eps)
    : BivariateModel(mx, my, eps) {}

double IndependenceModel::joint_cdf(double x, double y) const { return mx_.cdf(x) * my_.cdf(y); }

double IndependenceModel::joint_pdf(double x, double y) const { return mx_.pdf(x) * my_.pdf(y); }

double IndependenceModel::conditional_cdf_y(double, double y) const { return my_.cdf(y); }

double IndependenceModel::conditional_quantile_y(double, double w) const { return my_.quantile(w); }

nlohmann::json IndependenceModel::descriptor() const {
    return {{"id", "independent"},
            {"marginal_x", mx_.descriptor()},
            {"marginal_y", my_.descriptor()},
            {"epsilon", eps_}};
}

// ---------------------------------------------------------------------------
// Gaussian conditional

GaussianConditionalModel::GaussianConditionalModel(double rho, double eps)
    : BivariateModel(Marginal(MarginalKind::normal), Marginal(MarginalKind::normal), eps), rho_(rho) {
    if (!(rho > -1.0 && rho < 1.0))
        throw DomainError("Gaussian rho must lie in (-1, 1); |rho| = 1 is singular");
    sigma_ = std::sqrt((1.0 - rho) * (1.0 + rho));
}

double GaussianConditionalModel::joint_cdf(double x, double y) const {
    return normal::bivariate_cdf(x, y, rho_);
}

double GaussianConditionalModel::joint_pdf(double x, double y) const {
    const double z = (y - rho_ * x) / sigma_;
    return normal::pdf(x) * normal::pdf(z) / sigma_;
}

double GaussianConditionalModel::conditional_cdf_y(double u, double y) const {
    if (y == kInf) return 1.0;
    if (y == -kInf) return 0.0;
    return normal::cdf((y - rho_ * u) / sigma_);
}

double GaussianConditionalModel::conditional_quantile_y(double u, double w) const {
    return rho_ * u + sigma_ * normal::quantile(w);
}

nlohmann::json GaussianConditionalModel::descriptor() const {
    return {{"id", "gaussian"}, {"rho", rho_}, {"epsilon", eps_}};
}

// ---------------------------------------------------------------------------

std::unique_ptr<BivariateModel> make_model(const nlohmann::json& spec, double eps) {
    if (!spec.is_object() || !spec.contains("id")) throw ConfigError("model needs an 'id'");
    const auto id = spec.at("id").get<std::string>();
    if (id == "fgm") return std::make_unique<FgmCopulaModel>(spec.value("theta", 0.0), eps);
    if (id == "gaussian") return std::make_unique<GaussianConditionalModel>(spec.value("rho", 0.0), eps);
    if (id == "independent") {
        Marginal mx(parse_marginal_kind(spec.value("marginal_x", std::string("uniform"))),
                    spec.value("rate_x", 1.0));
        Marginal my(parse_marginal_kind(spec.value("marginal_y", std::string("uniform"))),
                    spec.value("rate_y", 1.0));
        return std::make_unique<IndependenceModel>(mx, my, eps);
    }
    throw ConfigError("unknown model id '" + id + "'");
}

}  // namespace osc
