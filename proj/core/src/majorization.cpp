#include "sdom/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdom/errors.hpp"

namespace sdom {

namespace {

double sum_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// theta majorized by eta, both given as multisets of equal size.
bool majorized_values(std::vector<double> theta, std::vector<double> eta, double tol) {
  std::sort(theta.begin(), theta.end());
  std::sort(eta.begin(), eta.end());
  double st = 0.0;
  double se = 0.0;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    st += theta[k];
    se += eta[k];
    if (st < se - tol) return false;
  }
  return std::abs(st - se) <= tol;
}

double chain_tol(const std::vector<double>& v) { return 1e-12 * std::max(1.0, sum_of(v)); }

// Depth-first search for a chain that fixes one coordinate of theta in place
// per transform. Residual invariant: theta restricted to the active set is
// majorized by v restricted to it.
class PositionalSearch {
 public:
  PositionalSearch(std::vector<double> eta, std::vector<double> theta)
      : v_(std::move(eta)), theta_(std::move(theta)), active_(v_.size(), true),
        tol_(chain_tol(v_)) {}

  bool run() { return step(); }
  const std::vector<TTransform>& chain() const { return chain_; }

 private:
  static constexpr std::size_t kNodeBudget = 200000;

  bool residual_ok() const {
    std::vector<double> a;
    std::vector<double> b;
    for (std::size_t k = 0; k < v_.size(); ++k) {
      if (!active_[k]) continue;
      a.push_back(theta_[k]);
      b.push_back(v_[k]);
    }
    return a.empty() || majorized_values(a, b, 1e3 * tol_);
  }

  bool step() {
    if (++nodes_ > kNodeBudget) return false;
    // Free fixes first; they never need a transform.
    std::vector<std::size_t> freed;
    for (std::size_t k = 0; k < v_.size(); ++k) {
      if (active_[k] && std::abs(v_[k] - theta_[k]) <= tol_) {
        active_[k] = false;
        freed.push_back(k);
      }
    }
    auto restore = [&] {
      for (auto k : freed) active_[k] = true;
    };
    std::vector<std::size_t> act;
    for (std::size_t k = 0; k < v_.size(); ++k) {
      if (active_[k]) act.push_back(k);
    }
    if (act.empty()) return true;
    if (act.size() == 1) {
      restore();
      return false;
    }

    struct Move {
      std::size_t i, j;
      double lambda;
      double score;
    };
    std::vector<Move> moves;
    for (auto i : act) {
      for (auto j : act) {
        if (i == j) continue;
        const double lo = std::min(v_[i], v_[j]);
        const double hi = std::max(v_[i], v_[j]);
        if (theta_[i] < lo || theta_[i] > hi || hi - lo <= tol_) continue;
        const double lambda = (theta_[i] - v_[j]) / (v_[i] - v_[j]);
        const double vj_new = v_[i] + v_[j] - theta_[i];
        moves.push_back({i, j, std::clamp(lambda, 0.0, 1.0), std::abs(vj_new - theta_[j])});
      }
    }
    std::stable_sort(moves.begin(), moves.end(),
                     [](const Move& a, const Move& b) { return a.score < b.score; });

    for (const auto& m : moves) {
      const double vi = v_[m.i];
      const double vj = v_[m.j];
      const TTransform t{m.i, m.j, m.lambda};
      t.apply(v_);
      active_[m.i] = false;
      if (residual_ok()) {
        chain_.push_back(t);
        if (step()) return true;
        chain_.pop_back();
      }
      active_[m.i] = true;
      v_[m.i] = vi;
      v_[m.j] = vj;
      if (nodes_ > kNodeBudget) break;
    }
    restore();
    return false;
  }

  std::vector<double> v_;
  std::vector<double> theta_;
  std::vector<bool> active_;
  double tol_;
  std::vector<TTransform> chain_;
  std::size_t nodes_ = 0;
};

// Classical reduction on multisets: move the largest active value down to the
// largest remaining target using the active partner just below that target.
// Ends with v a rearrangement of theta; at most n-1 transforms.
std::vector<TTransform> sorted_reduction(std::vector<double>& v, std::vector<double> targets) {
  std::vector<TTransform> out;
  const double tol = chain_tol(v);
  std::vector<bool> active(v.size(), true);
  std::sort(targets.begin(), targets.end(), std::greater<>());
  std::size_t next = 0;
  for (std::size_t remaining = v.size(); remaining > 1; --remaining) {
    std::size_t i = v.size();
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (active[k] && (i == v.size() || v[k] > v[i])) i = k;
    }
    const double t = targets[next++];
    if (std::abs(v[i] - t) > tol) {
      std::size_t j = v.size();
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!active[k] || k == i || v[k] > t) continue;
        if (j == v.size() || v[k] > v[j]) j = k;
      }
      if (j == v.size()) throw NotMajorized("sorted reduction found no partner");
      const double lambda = (t - v[j]) / (v[i] - v[j]);
      const TTransform tr{i, j, std::clamp(lambda, 0.0, 1.0)};
      tr.apply(v);
      out.push_back(tr);
    }
    active[i] = false;
  }
  return out;
}

}  // namespace

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.size() < 2) throw WeightError("weight vector needs at least 2 entries");
  for (double x : w_) {
    if (!std::isfinite(x) || x < 0.0) throw WeightError("weights must be finite and nonnegative");
  }
}

double WeightVector::sum() const noexcept { return sum_of(w_); }

void TTransform::apply(std::vector<double>& v) const {
  const double a = v.at(i);
  const double b = v.at(j);
  v[i] = lambda * a + (1.0 - lambda) * b;
  v[j] = (1.0 - lambda) * a + lambda * b;
}

bool majorizes(const WeightVector& theta, const WeightVector& eta) {
  if (theta.size() != eta.size()) {
    throw LengthMismatch("majorization needs equal lengths, got " + std::to_string(theta.size()) +
                         " and " + std::to_string(eta.size()));
  }
  const double n = static_cast<double>(theta.size());
  const double tol = 1e-9 * n * std::max(1.0, std::max(theta.sum(), eta.sum()));
  return majorized_values(theta.values(), eta.values(), tol);
}

std::vector<TTransform> t_transform_chain(const WeightVector& eta, const WeightVector& theta) {
  if (!majorizes(theta, eta)) throw NotMajorized("theta is not majorized by eta");
  PositionalSearch search(eta.values(), theta.values());
  if (search.run()) return search.chain();

  std::vector<double> v = eta.values();
  auto chain = sorted_reduction(v, theta.values());
  // Place each theta value at its own position with swaps.
  const double tol = 1e-9 * std::max(1.0, theta.sum());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (std::abs(v[k] - theta[k]) <= tol) continue;
    std::size_t best = k;
    for (std::size_t m = k + 1; m < v.size(); ++m) {
      if (std::abs(v[m] - theta[k]) < std::abs(v[best] - theta[k])) best = m;
    }
    const TTransform swap{k, best, 0.0};
    swap.apply(v);
    chain.push_back(swap);
  }
  return chain;
}

std::vector<double> replay(std::vector<double> v, const std::vector<TTransform>& chain) {
  for (const auto& t : chain) t.apply(v);
  return v;
}

std::vector<SchurViolation> schur_concavity_probe(
    const std::function<double(const std::vector<double>&)>& f, std::size_t n, std::size_t trials,
    RngStream& rng, double rel_tol) {
  if (n < 2) throw DomainError("schur_concavity_probe needs n >= 2");
  std::vector<SchurViolation> out;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<double> eta(n);
    for (auto& x : eta) x = rng.exponential();
    if (rng.uniform() < 0.25) eta[rng.next_u64() % n] = 0.0;
    const auto i = static_cast<std::size_t>(rng.next_u64() % n);
    auto j = static_cast<std::size_t>(rng.next_u64() % (n - 1));
    if (j >= i) ++j;
    std::vector<double> theta = eta;
    TTransform{i, j, rng.uniform()}.apply(theta);
    const double ft = f(theta);
    const double fe = f(eta);
    if (ft < fe - rel_tol * std::max(1.0, std::abs(fe))) {
      out.push_back({std::move(theta), std::move(eta), ft, fe});
    }
  }
  return out;
}

}  // namespace sdom
