#pragma once

#include <cstdint>
#include <vector>

#include "sdom/class_h.hpp"
#include "sdom/distribution.hpp"
#include "sdom/rng.hpp"

namespace sdom {

/// CP(lambda, F): sum of N ~ Poisson(lambda) iid severities.
class CompoundPoissonSpec {
 public:
  /// Throws DomainError unless lambda > 0 is finite and the severity is
  /// supported on [0, inf).
  CompoundPoissonSpec(double lambda, Distribution severity);

  double lambda() const noexcept { return lambda_; }
  const Distribution& severity() const noexcept { return severity_; }

 private:
  double lambda_;
  Distribution severity_;
};

/// Inversion for lambda <= 30, PTRS transformed rejection above.
std::uint64_t sample_poisson(double lambda, RngStream& rng);

double draw_cp(const CompoundPoissonSpec& spec, RngStream& rng);
std::vector<double> sample_cp(const CompoundPoissonSpec& spec, RngStream& rng, std::size_t n);

/// Law of a X_1 + (1-a) X_2 for iid X_i ~ CP(lambda, F): CP(2 lambda, H) with
/// H(x) = (F(x/a) + F(x/(1-a))) / 2. Throws DomainError unless a in (0,1).
CompoundPoissonSpec weighted_cp_mixture(const CompoundPoissonSpec& spec, double a);

/// CP(lambda, F) satisfies the dominance property exactly when F is in H;
/// this returns the class-H verdict of the severity.
MembershipVerdict cp_sd_verdict(const CompoundPoissonSpec& spec, const GridSpec& grid = {});

}  // namespace sdom
