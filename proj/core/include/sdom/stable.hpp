#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "sdom/rng.hpp"

namespace sdom {

/// S_alpha(sigma, beta, mu) with characteristic function
///   alpha != 1: exp(i mu t - sigma^a |t|^a (1 - i beta sign(t) tan(pi a / 2)))
///   alpha == 1: exp(i mu t - sigma |t| (1 + i (2 beta / pi) sign(t) log|t|))
struct StableParams {
  double alpha = 1.0;
  double beta = 0.0;
  double sigma = 1.0;
  double mu = 0.0;

  /// Throws DomainError unless alpha in (0,2], beta in [-1,1], sigma > 0 and
  /// mu finite.
  void validate() const;
};

/// Chambers-Mallows-Stuck draw. |alpha - 1| < 1e-8 uses the alpha = 1 branch.
double draw_stable(const StableParams& p, RngStream& rng);
std::vector<double> sample_stable(const StableParams& p, RngStream& rng, std::size_t n);

/// sum_i w_i X_i =d scale * X_1 + shift for iid standard X_i.
struct WeightedSumLaw {
  double scale;
  double shift;
  StableParams reference;
};

/// Closed-form law of a weighted sum of iid S_alpha(1, beta, 0) variables.
/// Weights must be nonnegative and sum to 1 within 1e-12 (WeightError);
/// zero weights drop out of both the power sum and the entropy term.
WeightedSumLaw weighted_sum_law(const StableParams& standard, const std::vector<double>& w);

/// True iff alpha == 1 and beta >= 0, or alpha < 1 and beta == 1.
bool sd_classification(double alpha, double beta);

std::complex<double> characteristic_function(const StableParams& p, double t);

}  // namespace sdom
