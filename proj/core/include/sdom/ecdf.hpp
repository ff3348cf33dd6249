#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sdom {

/// Empirical distribution function of a finite sample. Right-continuous:
/// F(x) = #{x_i <= x} / n.
class Ecdf {
 public:
  /// Throws DomainError for an empty sample or one containing NaN.
  explicit Ecdf(std::vector<double> sample);

  double operator()(double x) const;
  std::size_t size() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted() const noexcept { return sorted_; }
  /// Smallest sample value v with F(v) >= p, p in (0, 1].
  double quantile(double p) const;

 private:
  std::vector<double> sorted_;
};

/// One-sample DKW radius sqrt(ln(2/delta) / (2n)).
double dkw_epsilon(std::size_t n, double delta);

/// Two-sample band eps(n1) + eps(n2).
double dkw_two_sample(std::size_t n1, std::size_t n2, double delta);

/// sup_x |F_n(x) - F(x)| for a continuous reference cdf, evaluated at both
/// sides of every jump.
double ks_distance(const Ecdf& e, const std::function<double(double)>& cdf);

/// sup_x |F_1(x) - F_2(x)|, exact over the merged sample.
double ks_two_sample(const Ecdf& a, const Ecdf& b);

}  // namespace sdom
