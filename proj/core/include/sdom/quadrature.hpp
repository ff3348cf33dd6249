#pragma once

#include <cstddef>
#include <functional>

namespace sdom {

struct QuadratureSpec {
  double abs_tol = 1e-8;
  /// Upper bound on the number of subintervals kept by the adaptive scheme.
  std::size_t max_subdivisions = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t subintervals = 0;
};

/// Globally adaptive Gauss-Legendre quadrature of f over [a, b]. Each interval
/// is estimated with a 15-point rule on the whole and on both halves; the
/// interval with the largest discrepancy is split until the summed estimate
/// drops below abs_tol. Throws QuadratureFailure when max_subdivisions is
/// reached first or f returns a non-finite value.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

}  // namespace sdom
