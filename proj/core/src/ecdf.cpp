#include "sdom/ecdf.hpp"

#include <algorithm>
#include <cmath>

#include "sdom/errors.hpp"

namespace sdom {

Ecdf::Ecdf(std::vector<double> sample) : sorted_(std::move(sample)) {
  if (sorted_.empty()) throw DomainError("ECDF of an empty sample");
  if (std::any_of(sorted_.begin(), sorted_.end(), [](double v) { return std::isnan(v); })) {
    throw DomainError("ECDF sample contains NaN");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double Ecdf::quantile(double p) const {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("ECDF quantile needs p in (0, 1]");
  const double n = static_cast<double>(sorted_.size());
  auto k = static_cast<std::size_t>(std::ceil(p * n));
  k = std::clamp<std::size_t>(k, 1, sorted_.size());
  return sorted_[k - 1];
}

double dkw_epsilon(std::size_t n, double delta) {
  if (n == 0) throw DomainError("DKW radius needs n >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("DKW delta must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

double dkw_two_sample(std::size_t n1, std::size_t n2, double delta) {
  return dkw_epsilon(n1, delta) + dkw_epsilon(n2, delta);
}

double ks_distance(const Ecdf& e, const std::function<double(double)>& cdf) {
  const auto& xs = e.sorted();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double f = cdf(xs[i]);
    d = std::max({d, std::abs(static_cast<double>(i) / n - f), std::abs(static_cast<double>(j) / n - f)});
    i = j;
  }
  return d;
}

double ks_two_sample(const Ecdf& a, const Ecdf& b) {
  const auto& xa = a.sorted();
  const auto& xb = b.sorted();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xa.size() || j < xb.size()) {
    double x;
    if (j >= xb.size() || (i < xa.size() && xa[i] <= xb[j])) {
      x = xa[i];
    } else {
      x = xb[j];
    }
    while (i < xa.size() && xa[i] <= x) ++i;
    while (j < xb.size() && xb[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace sdom
