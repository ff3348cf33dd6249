#include "sdom/stable.hpp"

#include <cmath>
#include <numbers>

#include "sdom/errors.hpp"

namespace sdom {

namespace {

constexpr double kPi = std::numbers::pi;

bool near_one(double alpha) { return std::abs(alpha - 1.0) < 1e-8; }

// Standard S_alpha(1, beta, 0).
double draw_standard(double alpha, double beta, RngStream& rng) {
  const double v = kPi * (rng.uniform_open() - 0.5);
  const double w = rng.exponential();
  if (near_one(alpha)) {
    const double a = kPi / 2.0 + beta * v;
    return (2.0 / kPi) * (a * std::tan(v) - beta * std::log((kPi / 2.0) * w * std::cos(v) / a));
  }
  const double t = beta * std::tan(kPi * alpha / 2.0);
  const double n = -std::atan(t) / alpha;
  const double m = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
  const double shifted = alpha * (v - n);
  return m * std::sin(shifted) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos(v - shifted) / w, (1.0 - alpha) / alpha);
}

}  // namespace

void StableParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("stable alpha must lie in (0, 2]");
  if (!(beta >= -1.0 && beta <= 1.0)) throw DomainError("stable beta must lie in [-1, 1]");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("stable sigma must be positive");
  if (!std::isfinite(mu)) throw DomainError("stable mu must be finite");
}

double draw_stable(const StableParams& p, RngStream& rng) {
  const double x = draw_standard(p.alpha, p.beta, rng);
  if (near_one(p.alpha)) {
    // sigma X picks up a log-scale drift when alpha = 1.
    return p.sigma * x + p.mu + (2.0 / kPi) * p.beta * p.sigma * std::log(p.sigma);
  }
  return p.sigma * x + p.mu;
}

std::vector<double> sample_stable(const StableParams& p, RngStream& rng, std::size_t n) {
  p.validate();
  if (n == 0) throw DomainError("sample size must be >= 1");
  std::vector<double> out(n);
  for (auto& x : out) x = draw_stable(p, rng);
  return out;
}

WeightedSumLaw weighted_sum_law(const StableParams& standard, const std::vector<double>& w) {
  standard.validate();
  if (w.empty()) throw WeightError("weights must be nonempty");
  double total = 0.0;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) throw WeightError("weights must be finite and nonnegative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw WeightError("weights must sum to 1");

  StableParams ref{standard.alpha, standard.beta, 1.0, 0.0};
  if (near_one(standard.alpha)) {
    double entropy = 0.0;
    for (double x : w) {
      if (x > 0.0) entropy += x * std::log(x);
    }
    return {1.0, -(2.0 * standard.beta / kPi) * entropy, ref};
  }
  double power_sum = 0.0;
  for (double x : w) {
    if (x > 0.0) power_sum += std::pow(x, standard.alpha);
  }
  return {std::pow(power_sum, 1.0 / standard.alpha), 0.0, ref};
}

bool sd_classification(double alpha, double beta) {
  return (alpha == 1.0 && beta >= 0.0) || (alpha < 1.0 && beta == 1.0);
}

std::complex<double> characteristic_function(const StableParams& p, double t) {
  p.validate();
  if (t == 0.0) return {1.0, 0.0};
  const double at = std::abs(t);
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  std::complex<double> expo;
  if (near_one(p.alpha)) {
    expo = {-p.sigma * at, p.mu * t - p.sigma * at * (2.0 * p.beta / kPi) * sgn * std::log(at)};
  } else {
    const double s = std::pow(p.sigma * at, p.alpha);
    expo = {-s, p.mu * t + s * p.beta * sgn * std::tan(kPi * p.alpha / 2.0)};
  }
  return std::exp(expo);
}

}  // namespace sdom
