#include "sdom/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <string>

#include "sdom/errors.hpp"

namespace sdom {

namespace {

constexpr std::size_t kOrder = 15;

struct Rule {
  std::array<double, kOrder> x{};
  std::array<double, kOrder> w{};
};

// Newton iteration on P_n from the Chebyshev initial guess.
Rule make_rule() {
  Rule r;
  const double pi = std::acos(-1.0);
  const int n = static_cast<int>(kOrder);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[static_cast<std::size_t>(i)] = z;
    r.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

struct Interval {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

class Integrator {
 public:
  Integrator(const std::function<double(double)>& f) : f_(f) {}

  double gauss(double a, double b) {
    const auto& r = rule();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < kOrder; ++i) {
      const double y = f_(c + h * r.x[i]);
      if (!std::isfinite(y)) {
        throw QuadratureFailure("integrand is not finite at x=" + std::to_string(c + h * r.x[i]));
      }
      s += r.w[i] * y;
    }
    evaluations_ += kOrder;
    return s * h;
  }

  Interval estimate(double a, double b) {
    const double m = 0.5 * (a + b);
    const double whole = gauss(a, b);
    const double halves = gauss(a, m) + gauss(m, b);
    return {a, b, halves, std::abs(halves - whole)};
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const std::function<double(double)>& f_;
  std::size_t evaluations_ = 0;
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration limits must be finite");
  if (!(spec.abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (a == b) return {};
  const double sign = a < b ? 1.0 : -1.0;
  if (a > b) std::swap(a, b);

  Integrator in(f);
  std::priority_queue<Interval> heap;
  heap.push(in.estimate(a, b));
  double total = heap.top().value;
  double error = heap.top().error;

  while (error > spec.abs_tol) {
    if (heap.size() >= spec.max_subdivisions) {
      throw QuadratureFailure("tolerance " + std::to_string(spec.abs_tol) + " not met after " +
                              std::to_string(heap.size()) + " subintervals (error estimate " +
                              std::to_string(error) + ")");
    }
    const Interval worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {
      throw QuadratureFailure("interval cannot be subdivided further near x=" + std::to_string(m));
    }
    const Interval left = in.estimate(worst.a, m);
    const Interval right = in.estimate(m, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  double value = 0.0;
  double err = 0.0;
  const std::size_t count = heap.size();
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {sign * value, err, in.evaluations(), count};
}

}  // namespace sdom
