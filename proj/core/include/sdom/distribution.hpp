#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdom/rng.hpp"

namespace sdom {

enum class Family {
  Pareto,
  LogPareto,
  InverseBurr,
  Stoppa,
  LogCauchy,
  Frechet,
  AbsCauchy,
  InverseGamma,
  FellerPareto,
  PointMass,
  Composite,
};

std::string_view family_name(Family f) noexcept;
/// Inverse of family_name for the zoo families; nullopt for unknown names.
std::optional<Family> family_from_name(std::string_view name) noexcept;

using ParamMap = std::map<std::string, double, std::less<>>;

/// Behaviour of one law. Zoo families and closure composites implement this;
/// user code normally goes through Distribution.
class DistributionModel {
 public:
  virtual ~DistributionModel() = default;

  virtual double cdf(double x) const = 0;
  /// Must agree with 1 - cdf(x) to 1e-12; override when a direct formula is
  /// more accurate in the upper tail.
  virtual double tail(double x) const { return 1.0 - cdf(x); }
  virtual bool has_pdf() const { return false; }
  /// Throws NoDensity unless has_pdf().
  virtual double pdf(double x) const;
  /// Generic inverse by bracketed bisection on cdf; p in (0,1) is checked by
  /// the caller.
  virtual double quantile(double p) const;
  /// One draw. Defaults to inverse transform of one open uniform.
  virtual double draw(RngStream& rng) const { return quantile(rng.uniform_open()); }
  virtual double support_low() const = 0;
  /// False when the law has an atom (PointMass, deductible).
  virtual bool continuous() const { return true; }
};

/// Immutable handle to a univariate law on the real line. Cheap to copy and
/// safe to share across threads.
class Distribution {
 public:
  struct Composition {
    std::string kind;                     // "power", "max", "mixture", ...
    std::vector<Distribution> components;
    std::vector<double> weights;          // mixture only
    std::string map_name;                 // convex transform only
  };

  Distribution(Family family, ParamMap params, std::shared_ptr<const DistributionModel> model,
               std::optional<Composition> composition = std::nullopt);

  Family family() const noexcept { return family_; }
  const ParamMap& params() const noexcept { return params_; }
  /// Named parameter; throws DomainError when absent.
  double param(std::string_view name) const;
  const std::optional<Composition>& composition() const noexcept { return composition_; }
  bool is_composite() const noexcept { return family_ == Family::Composite; }

  double support_low() const { return model_->support_low(); }
  bool continuous() const { return model_->continuous(); }
  bool has_pdf() const { return model_->has_pdf(); }

  /// 0 below support_low.
  double cdf(double x) const { return model_->cdf(x); }
  double tail(double x) const { return model_->tail(x); }
  double pdf(double x) const { return model_->pdf(x); }
  /// Throws DomainError for p outside (0,1).
  double quantile(double p) const;

  double draw(RngStream& rng) const { return model_->draw(rng); }
  /// n iid draws; n >= 1.
  std::vector<double> sample(RngStream& rng, std::size_t n) const;

  /// Set by the closure constructors when every input is known to be in
  /// class H; holds the chain of rules that justify it.
  const std::optional<std::string>& h_certificate() const noexcept { return h_certificate_; }
  Distribution with_h_certificate(std::string rule) const;

  /// Short human-readable description, e.g. "pareto(alpha=1)".
  std::string describe() const;

  const DistributionModel& model() const noexcept { return *model_; }

 private:
  Family family_;
  ParamMap params_;
  std::shared_ptr<const DistributionModel> model_;
  std::optional<Composition> composition_;
  std::optional<std::string> h_certificate_;
};

// Zoo families in standardized form. Invalid parameters throw DomainError.

/// F(x) = 1 - (x+1)^(-alpha)
Distribution pareto(double alpha);
/// F(x) = 1 - (log(x+1)+1)^(-alpha)
Distribution log_pareto(double alpha);
/// F(x) = (x^tau / (x^tau + 1))^alpha
Distribution inverse_burr(double tau, double alpha);
/// F(x) = (1 - (x+1)^(-alpha))^beta
Distribution stoppa(double alpha, double beta);
/// F(x) = arctan(log x)/pi + 1/2
Distribution log_cauchy();
/// F(x) = exp(-x^(-alpha))
Distribution frechet(double alpha);
/// F(x) = (2/pi) arctan(x)
Distribution abs_cauchy();
/// Shape alpha, scale beta: f(x) = beta^alpha x^(-alpha-1) exp(-beta/x) / Gamma(alpha).
/// inverse_gamma(0.5, c/2) is the Levy law with scale c.
Distribution inverse_gamma(double alpha, double beta);
/// FP(0, 1, gamma, gamma1, gamma2).
Distribution feller_pareto(double gamma, double gamma1, double gamma2);
Distribution point_mass(double value);

/// Composite law of shift + scale * X, scale > 0.
Distribution location_scale(const Distribution& base, double shift, double scale);

/// Bracketed bisection for the smallest x with cdf(x) >= p. The bracket starts
/// at [support_low + 1e-300, q] and q doubles until cdf(q) >= p; iteration stops
/// at 1e-10 relative width.
double bisect_quantile(const std::function<double(double)>& cdf, double p, double support_low);

}  // namespace sdom
