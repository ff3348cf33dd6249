#include "sdom/distribution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "sdom/errors.hpp"

namespace sdom {

namespace {

using std::numbers::pi;

constexpr std::array<std::pair<Family, std::string_view>, 11> kFamilyNames{{
    {Family::Pareto, "pareto"},
    {Family::LogPareto, "log_pareto"},
    {Family::InverseBurr, "inverse_burr"},
    {Family::Stoppa, "stoppa"},
    {Family::LogCauchy, "log_cauchy"},
    {Family::Frechet, "frechet"},
    {Family::AbsCauchy, "abs_cauchy"},
    {Family::InverseGamma, "inverse_gamma"},
    {Family::FellerPareto, "feller_pareto"},
    {Family::PointMass, "point_mass"},
    {Family::Composite, "composite"},
}};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

// Positive-support families share the "below support" conventions.
class PositiveModel : public DistributionModel {
 public:
  double support_low() const override { return 0.0; }
  bool has_pdf() const override { return true; }
};

class ParetoModel final : public PositiveModel {
 public:
  explicit ParetoModel(double alpha) : alpha_(alpha) {}
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : -std::expm1(-alpha_ * std::log1p(x));
  }
  double tail(double x) const override {
    return x <= 0.0 ? 1.0 : std::exp(-alpha_ * std::log1p(x));
  }
  double pdf(double x) const override {
    return x < 0.0 ? 0.0 : alpha_ * std::exp((-alpha_ - 1.0) * std::log1p(x));
  }
  double quantile(double p) const override { return std::expm1(-std::log1p(-p) / alpha_); }

 private:
  double alpha_;
};

class LogParetoModel final : public PositiveModel {
 public:
  explicit LogParetoModel(double alpha) : alpha_(alpha) {}
  double cdf(double x) const override { return x <= 0.0 ? 0.0 : 1.0 - tail(x); }
  double tail(double x) const override {
    return x <= 0.0 ? 1.0 : std::exp(-alpha_ * std::log1p(std::log1p(x)));
  }
  double pdf(double x) const override {
    if (x < 0.0) return 0.0;
    return alpha_ * std::exp((-alpha_ - 1.0) * std::log1p(std::log1p(x))) / (1.0 + x);
  }
  double quantile(double p) const override {
    return std::expm1(std::expm1(-std::log1p(-p) / alpha_));
  }

 private:
  double alpha_;
};

// u(x) = x^tau / (x^tau + 1) = 1 / (1 + x^-tau), F = u^alpha.
class InverseBurrModel final : public PositiveModel {
 public:
  InverseBurrModel(double tau, double alpha) : tau_(tau), alpha_(alpha) {}
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : std::exp(alpha_ * log_u(x));
  }
  double tail(double x) const override {
    return x <= 0.0 ? 1.0 : -std::expm1(alpha_ * log_u(x));
  }
  double pdf(double x) const override {
    if (x <= 0.0) return 0.0;
    // (alpha tau / x) u^alpha (1 - u), with 1 - u = 1 / (1 + x^tau)
    const double log_one_minus_u = -std::log1p(std::pow(x, tau_));
    return alpha_ * tau_ / x * std::exp(alpha_ * log_u(x) + log_one_minus_u);
  }
  double quantile(double p) const override {
    const double u = std::pow(p, 1.0 / alpha_);
    // (u / (1-u))^(1/tau), 1 - u computed from p for accuracy near p -> 1
    const double one_minus_u = -std::expm1(std::log(p) / alpha_);
    return std::pow(u / one_minus_u, 1.0 / tau_);
  }

 private:
  double log_u(double x) const { return -std::log1p(std::pow(x, -tau_)); }
  double tau_;
  double alpha_;
};

class StoppaModel final : public PositiveModel {
 public:
  StoppaModel(double alpha, double beta) : alpha_(alpha), beta_(beta) {}
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : std::exp(beta_ * log_base(x));
  }
  double tail(double x) const override {
    return x <= 0.0 ? 1.0 : -std::expm1(beta_ * log_base(x));
  }
  double pdf(double x) const override {
    if (x <= 0.0) return 0.0;
    const double lx = std::log1p(x);
    return beta_ * alpha_ * std::exp((beta_ - 1.0) * log_base(x) + (-alpha_ - 1.0) * lx);
  }
  double quantile(double p) const override {
    // 1 - (x+1)^-alpha = p^(1/beta)
    const double one_minus = -std::expm1(std::log(p) / beta_);
    return std::expm1(-std::log(one_minus) / alpha_);
  }

 private:
  // log(1 - (x+1)^-alpha)
  double log_base(double x) const { return std::log(-std::expm1(-alpha_ * std::log1p(x))); }
  double alpha_;
  double beta_;
};

class LogCauchyModel final : public PositiveModel {
 public:
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : std::atan(std::log(x)) / pi + 0.5;
  }
  double tail(double x) const override {
    if (x <= 0.0) return 1.0;
    const double l = std::log(x);
    // 1/2 - atan(l)/pi = atan(1/l)/pi for l > 0
    return l > 0.0 ? std::atan(1.0 / l) / pi : 0.5 - std::atan(l) / pi;
  }
  double pdf(double x) const override {
    if (x <= 0.0) return 0.0;
    const double l = std::log(x);
    return 1.0 / (pi * x * (l * l + 1.0));
  }
  double quantile(double p) const override { return std::exp(std::tan(pi * (p - 0.5))); }
};

class FrechetModel final : public PositiveModel {
 public:
  explicit FrechetModel(double alpha) : alpha_(alpha) {}
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -alpha_));
  }
  double tail(double x) const override {
    return x <= 0.0 ? 1.0 : -std::expm1(-std::pow(x, -alpha_));
  }
  double pdf(double x) const override {
    if (x <= 0.0) return 0.0;
    const double t = std::pow(x, -alpha_);
    return alpha_ * t / x * std::exp(-t);
  }
  double quantile(double p) const override { return std::pow(-std::log(p), -1.0 / alpha_); }

 private:
  double alpha_;
};

class AbsCauchyModel final : public PositiveModel {
 public:
  double cdf(double x) const override { return x <= 0.0 ? 0.0 : 2.0 / pi * std::atan(x); }
  double tail(double x) const override {
    return x <= 0.0 ? 1.0 : 2.0 / pi * std::atan(1.0 / x);
  }
  double pdf(double x) const override { return x < 0.0 ? 0.0 : 2.0 / (pi * (x * x + 1.0)); }
  double quantile(double p) const override { return std::tan(pi * p / 2.0); }
};

class InverseGammaModel final : public PositiveModel {
 public:
  InverseGammaModel(double alpha, double beta)
      : alpha_(alpha), beta_(beta), log_norm_(alpha * std::log(beta) - std::lgamma(alpha)) {}
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : boost::math::gamma_q(alpha_, beta_ / x);
  }
  double tail(double x) const override {
    return x <= 0.0 ? 1.0 : boost::math::gamma_p(alpha_, beta_ / x);
  }
  double pdf(double x) const override {
    if (x <= 0.0) return 0.0;
    return std::exp(log_norm_ - (alpha_ + 1.0) * std::log(x) - beta_ / x);
  }
  double quantile(double p) const override {
    return beta_ / boost::math::gamma_q_inv(alpha_, p);
  }

 private:
  double alpha_;
  double beta_;
  double log_norm_;
};

// With t = x^(1/gamma), T = t/(1+t) ~ Beta(gamma2, gamma1).
class FellerParetoModel final : public PositiveModel {
 public:
  FellerParetoModel(double gamma, double gamma1, double gamma2)
      : gamma_(gamma), g1_(gamma1), g2_(gamma2) {
    const double log_beta = std::lgamma(g1_) + std::lgamma(g2_) - std::lgamma(g1_ + g2_);
    log_norm_ = -std::log(gamma_) - log_beta;
  }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    // T = 1 / (1 + x^(-1/gamma)); 1 - T = 1 / (1 + x^(1/gamma))
    const double s = std::pow(x, -1.0 / gamma_);
    return s < 1.0 ? boost::math::ibetac(g1_, g2_, s / (1.0 + s))
                   : boost::math::ibeta(g2_, g1_, 1.0 / (1.0 + s));
  }
  double tail(double x) const override {
    if (x <= 0.0) return 1.0;
    const double s = std::pow(x, -1.0 / gamma_);
    return s < 1.0 ? boost::math::ibeta(g1_, g2_, s / (1.0 + s))
                   : boost::math::ibetac(g2_, g1_, 1.0 / (1.0 + s));
  }
  double pdf(double x) const override {
    if (x <= 0.0) return 0.0;
    const double lx = std::log(x);
    return std::exp(log_norm_ + (g2_ / gamma_ - 1.0) * lx -
                    (g1_ + g2_) * std::log1p(std::exp(lx / gamma_)));
  }
  double quantile(double p) const override {
    if (p <= 0.5) {
      const double z = boost::math::ibeta_inv(g2_, g1_, p);
      return std::pow(z / (1.0 - z), gamma_);
    }
    const double zc = boost::math::ibeta_inv(g1_, g2_, 1.0 - p);  // 1 - T
    return std::pow((1.0 - zc) / zc, gamma_);
  }

 private:
  double gamma_;
  double g1_;
  double g2_;
  double log_norm_;
};

class PointMassModel final : public DistributionModel {
 public:
  explicit PointMassModel(double value) : value_(value) {}
  double cdf(double x) const override { return x >= value_ ? 1.0 : 0.0; }
  double tail(double x) const override { return x >= value_ ? 0.0 : 1.0; }
  double quantile(double) const override { return value_; }
  double support_low() const override { return value_; }
  bool continuous() const override { return false; }

 private:
  double value_;
};

class LocationScaleModel final : public DistributionModel {
 public:
  LocationScaleModel(Distribution base, double shift, double scale)
      : base_(std::move(base)), shift_(shift), scale_(scale) {}
  double cdf(double x) const override { return base_.cdf((x - shift_) / scale_); }
  double tail(double x) const override { return base_.tail((x - shift_) / scale_); }
  bool has_pdf() const override { return base_.has_pdf(); }
  double pdf(double x) const override { return base_.pdf((x - shift_) / scale_) / scale_; }
  double quantile(double p) const override { return shift_ + scale_ * base_.quantile(p); }
  double draw(RngStream& rng) const override { return shift_ + scale_ * base_.draw(rng); }
  double support_low() const override { return shift_ + scale_ * base_.support_low(); }
  bool continuous() const override { return base_.continuous(); }

 private:
  Distribution base_;
  double shift_;
  double scale_;
};

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

double DistributionModel::pdf(double) const {
  throw NoDensity("law has no analytic density");
}

double DistributionModel::quantile(double p) const {
  return bisect_quantile([this](double x) { return cdf(x); }, p, support_low());
}

std::string_view family_name(Family f) noexcept {
  for (const auto& [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  return "unknown";
}

std::optional<Family> family_from_name(std::string_view name) noexcept {
  for (const auto& [fam, n] : kFamilyNames) {
    if (n == name && fam != Family::Composite) return fam;
  }
  return std::nullopt;
}

Distribution::Distribution(Family family, ParamMap params,
                           std::shared_ptr<const DistributionModel> model,
                           std::optional<Composition> composition)
    : family_(family),
      params_(std::move(params)),
      model_(std::move(model)),
      composition_(std::move(composition)) {}

double Distribution::param(std::string_view name) const {
  const auto it = params_.find(name);
  if (it == params_.end()) {
    throw DomainError("distribution " + describe() + " has no parameter '" + std::string(name) + "'");
  }
  return it->second;
}

double Distribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile level must lie in (0,1), got " + format_number(p));
  }
  return model_->quantile(p);
}

std::vector<double> Distribution::sample(RngStream& rng, std::size_t n) const {
  if (n == 0) throw DomainError("sample size must be >= 1");
  std::vector<double> out(n);
  for (auto& v : out) v = model_->draw(rng);
  return out;
}

Distribution Distribution::with_h_certificate(std::string rule) const {
  Distribution copy = *this;
  copy.h_certificate_ = std::move(rule);
  return copy;
}

std::string Distribution::describe() const {
  std::string out;
  if (composition_) {
    out = composition_->kind;
  } else {
    out = std::string(family_name(family_));
  }
  out += "(";
  bool first = true;
  for (const auto& [k, v] : params_) {
    if (!first) out += ",";
    out += k + "=" + format_number(v);
    first = false;
  }
  if (composition_) {
    for (const auto& c : composition_->components) {
      if (!first) out += ",";
      out += c.describe();
      first = false;
    }
  }
  return out + ")";
}

Distribution pareto(double alpha) {
  require_positive(alpha, "pareto alpha");
  return {Family::Pareto, {{"alpha", alpha}}, std::make_shared<ParetoModel>(alpha)};
}

Distribution log_pareto(double alpha) {
  require_positive(alpha, "log_pareto alpha");
  return {Family::LogPareto, {{"alpha", alpha}}, std::make_shared<LogParetoModel>(alpha)};
}

Distribution inverse_burr(double tau, double alpha) {
  require_positive(tau, "inverse_burr tau");
  require_positive(alpha, "inverse_burr alpha");
  return {Family::InverseBurr, {{"alpha", alpha}, {"tau", tau}},
          std::make_shared<InverseBurrModel>(tau, alpha)};
}

Distribution stoppa(double alpha, double beta) {
  require_positive(alpha, "stoppa alpha");
  require_positive(beta, "stoppa beta");
  return {Family::Stoppa, {{"alpha", alpha}, {"beta", beta}},
          std::make_shared<StoppaModel>(alpha, beta)};
}

Distribution log_cauchy() { return {Family::LogCauchy, {}, std::make_shared<LogCauchyModel>()}; }

Distribution frechet(double alpha) {
  require_positive(alpha, "frechet alpha");
  return {Family::Frechet, {{"alpha", alpha}}, std::make_shared<FrechetModel>(alpha)};
}

Distribution abs_cauchy() { return {Family::AbsCauchy, {}, std::make_shared<AbsCauchyModel>()}; }

Distribution inverse_gamma(double alpha, double beta) {
  require_positive(alpha, "inverse_gamma alpha");
  require_positive(beta, "inverse_gamma beta");
  return {Family::InverseGamma, {{"alpha", alpha}, {"beta", beta}},
          std::make_shared<InverseGammaModel>(alpha, beta)};
}

Distribution feller_pareto(double gamma, double gamma1, double gamma2) {
  require_positive(gamma, "feller_pareto gamma");
  require_positive(gamma1, "feller_pareto gamma1");
  require_positive(gamma2, "feller_pareto gamma2");
  return {Family::FellerPareto,
          {{"gamma", gamma}, {"gamma1", gamma1}, {"gamma2", gamma2}},
          std::make_shared<FellerParetoModel>(gamma, gamma1, gamma2)};
}

Distribution point_mass(double value) {
  if (!std::isfinite(value)) throw DomainError("point_mass value must be finite");
  return {Family::PointMass, {{"value", value}}, std::make_shared<PointMassModel>(value)};
}

Distribution location_scale(const Distribution& base, double shift, double scale) {
  if (!std::isfinite(shift)) throw DomainError("location_scale shift must be finite");
  require_positive(scale, "location_scale scale");
  return {Family::Composite,
          {{"scale", scale}, {"shift", shift}},
          std::make_shared<LocationScaleModel>(base, shift, scale),
          Distribution::Composition{"location_scale", {base}, {}, {}}};
}

double bisect_quantile(const std::function<double(double)>& cdf, double p, double support_low) {
  constexpr double kRelTol = 1e-10;
  constexpr int kMaxIter = 4000;
  double lo = support_low + 1e-300;
  if (cdf(lo) >= p) return lo;
  double width = std::max(1.0, std::abs(lo));
  double hi = lo + width;
  while (cdf(hi) < p) {
    lo = hi;
    width *= 2.0;
    hi = lo + width;
    if (!std::isfinite(hi)) throw DomainError("quantile bracket diverged");
  }
  for (int it = 0; it < kMaxIter; ++it) {
    if (hi - lo <= kRelTol * std::max(std::abs(hi), std::abs(lo))) break;
    // Geometric midpoint while the bracket spans decades on the positive axis.
    const double mid = (lo > 0.0 && hi > 4.0 * lo) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cdf(mid) >= p) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace sdom
