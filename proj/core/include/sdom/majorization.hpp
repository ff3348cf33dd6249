#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

#include "sdom/rng.hpp"

namespace sdom {

/// Nonnegative finite weights, length >= 2. Throws WeightError otherwise.
class WeightVector {
 public:
  WeightVector(std::vector<double> w);
  WeightVector(std::initializer_list<double> w) : WeightVector(std::vector<double>(w)) {}

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& values() const noexcept { return w_; }
  double sum() const noexcept;

 private:
  std::vector<double> w_;
};

/// Replaces (v_i, v_j) by (l v_i + (1-l) v_j, (1-l) v_i + l v_j). Indices are
/// zero-based.
struct TTransform {
  std::size_t i;
  std::size_t j;
  double lambda;

  void apply(std::vector<double>& v) const;
};

/// True iff theta is majorized by eta: equal sums within 1e-9 n max(1, sum)
/// and every ascending partial sum of theta at least that of eta.
/// Throws LengthMismatch for different lengths.
bool majorizes(const WeightVector& theta, const WeightVector& eta);

/// Transforms whose application to eta, in order, yields theta coordinatewise
/// within 1e-9. Throws NotMajorized unless majorizes(theta, eta).
///
/// The chain has at most n-1 steps whenever a step sequence that fixes one
/// coordinate of theta in place per transform exists; a bounded search looks
/// for it. If the search gives up, the classical sorted reduction is used and
/// finished with swaps (lambda = 0), which can exceed n-1 steps.
std::vector<TTransform> t_transform_chain(const WeightVector& eta, const WeightVector& theta);

/// Applies the chain to a copy of v.
std::vector<double> replay(std::vector<double> v, const std::vector<TTransform>& chain);

struct SchurViolation {
  std::vector<double> theta;
  std::vector<double> eta;
  double f_theta;
  double f_eta;
};

/// Random search for pairs theta = T(eta) with f(theta) < f(eta) - tol, where
/// tol = rel_tol * max(1, |f(eta)|). eta has Exponential(1) entries with a
/// coordinate zeroed one time in four; T uses a random pair and lambda.
std::vector<SchurViolation> schur_concavity_probe(
    const std::function<double(const std::vector<double>&)>& f, std::size_t n, std::size_t trials,
    RngStream& rng, double rel_tol = 1e-10);

}  // namespace sdom
