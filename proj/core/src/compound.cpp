#include "sdom/compound.hpp"

#include <cmath>

#include "sdom/errors.hpp"

namespace sdom {

namespace {

std::uint64_t poisson_inversion(double lambda, RngStream& rng) {
  const double u = rng.uniform();
  double p = std::exp(-lambda);
  double cum = p;
  std::uint64_t k = 0;
  const double cap = lambda + 40.0 * std::sqrt(lambda) + 60.0;
  while (u > cum && static_cast<double>(k) < cap) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cum += p;
  }
  return k;
}

// Hormann (1993), transformed rejection with squeeze.
std::uint64_t poisson_ptrs(double lambda, RngStream& rng) {
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace

CompoundPoissonSpec::CompoundPoissonSpec(double lambda, Distribution severity)
    : lambda_(lambda), severity_(std::move(severity)) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("Poisson mean must be positive");
  if (severity_.support_low() < 0.0) {
    throw DomainError("severity must be supported on [0, inf), got " + severity_.describe());
  }
}

std::uint64_t sample_poisson(double lambda, RngStream& rng) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("Poisson mean must be positive");
  return lambda <= 30.0 ? poisson_inversion(lambda, rng) : poisson_ptrs(lambda, rng);
}

double draw_cp(const CompoundPoissonSpec& spec, RngStream& rng) {
  const auto k = sample_poisson(spec.lambda(), rng);
  double s = 0.0;
  for (std::uint64_t i = 0; i < k; ++i) s += spec.severity().draw(rng);
  return s;
}

std::vector<double> sample_cp(const CompoundPoissonSpec& spec, RngStream& rng, std::size_t n) {
  if (n == 0) throw DomainError("sample size must be >= 1");
  std::vector<double> out(n);
  for (auto& x : out) x = draw_cp(spec, rng);
  return out;
}

CompoundPoissonSpec weighted_cp_mixture(const CompoundPoissonSpec& spec, double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("mixture weight a must lie in (0, 1)");
  const auto& f = spec.severity();
  auto h = mixture({0.5, 0.5}, {location_scale(f, 0.0, a), location_scale(f, 0.0, 1.0 - a)});
  return {2.0 * spec.lambda(), std::move(h)};
}

MembershipVerdict cp_sd_verdict(const CompoundPoissonSpec& spec, const GridSpec& grid) {
  return h_membership(spec.severity(), grid);
}

}  // namespace sdom
