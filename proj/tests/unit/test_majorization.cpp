#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sdom/errors.hpp"
#include "sdom/majorization.hpp"

using namespace sdom;

namespace {

std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = e(gen);
  return v;
}

// theta from eta by a few random T-transforms.
std::vector<double> smoothed(std::mt19937_64& gen, std::vector<double> v, int steps) {
  std::uniform_int_distribution<std::size_t> idx(0, v.size() - 1);
  std::uniform_real_distribution<double> lam(0, 1);
  for (int s = 0; s < steps; ++s) {
    const auto i = idx(gen);
    auto j = idx(gen);
    if (i == j) j = (j + 1) % v.size();
    TTransform{i, j, lam(gen)}.apply(v);
  }
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Majorizes, Examples) {
  EXPECT_TRUE(majorizes({0.5, 0.5}, {1, 0}));
  EXPECT_TRUE(majorizes({2, 3}, {1, 4}));
  EXPECT_FALSE(majorizes({1, 4}, {2, 3}));
  EXPECT_FALSE(majorizes({1, 1}, {1, 2}));
  EXPECT_THROW(majorizes({1, 2}, {1, 1, 1}), LengthMismatch);
}

TEST(WeightVectorTest, Validation) {
  EXPECT_THROW(WeightVector({1.0}), WeightError);
  EXPECT_THROW(WeightVector({1.0, -0.1}), WeightError);
  EXPECT_THROW(WeightVector({1.0, INFINITY}), WeightError);
  EXPECT_DOUBLE_EQ(WeightVector({1, 2, 3}).sum(), 6.0);
}

TEST(TChain, Examples) {
  const auto c = t_transform_chain({1, 0}, {0.5, 0.5});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_DOUBLE_EQ(c[0].lambda, 0.5);
  EXPECT_TRUE(t_transform_chain({0.3, 0.7}, {0.3, 0.7}).empty());
  const WeightVector eta{5, 3, 0};
  const WeightVector theta{4, 2, 2};
  const auto c3 = t_transform_chain(eta, theta);
  EXPECT_LE(c3.size(), 2u);
  EXPECT_LE(max_abs_diff(replay(eta.values(), c3), theta.values()), 1e-9);
  EXPECT_THROW(t_transform_chain({2, 3}, {1, 4}), NotMajorized);
}

TEST(TChain, PermutedTargets) {
  const WeightVector eta{0, 3, 5};
  const WeightVector theta{2, 4, 2};
  const auto c = t_transform_chain(eta, theta);
  EXPECT_LE(c.size(), 2u);
  EXPECT_LE(max_abs_diff(replay(eta.values(), c), theta.values()), 1e-9);
}

TEST(TTransformProperty, PreservesSumAndIsMajorizedByInput) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> lam(0, 1);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 2 + t % 7;
    const auto v = random_vector(gen, n);
    auto w = v;
    TTransform{0, n - 1, lam(gen)}.apply(w);
    const double sv = std::accumulate(v.begin(), v.end(), 0.0);
    const double sw = std::accumulate(w.begin(), w.end(), 0.0);
    ASSERT_NEAR(sv, sw, 1e-12 * std::max(1.0, sv));
    ASSERT_TRUE(majorizes(w, v));
  }
}

TEST(TChainProperty, ReplayAndLength) {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + t % 8;
    const auto eta = random_vector(gen, n);
    const auto theta = smoothed(gen, eta, 1 + t % 5);
    const auto c = t_transform_chain(eta, theta);
    ASSERT_LE(max_abs_diff(replay(eta, c), theta), 1e-9);
    EXPECT_LE(c.size(), n - 1);
    for (const auto& tr : c) {
      ASSERT_NE(tr.i, tr.j);
      ASSERT_GE(tr.lambda, 0.0);
      ASSERT_LE(tr.lambda, 1.0);
    }
  }
}

TEST(MajorizesProperty, ReflexiveTransitivePermutationInvariant) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + t % 6;
    const auto a = random_vector(gen, n);
    const auto b = smoothed(gen, a, 2);
    const auto c = smoothed(gen, b, 2);
    ASSERT_TRUE(majorizes(a, a));
    ASSERT_TRUE(majorizes(b, a));
    ASSERT_TRUE(majorizes(c, b));
    ASSERT_TRUE(majorizes(c, a));
    auto pa = a;
    auto pc = c;
    std::shuffle(pa.begin(), pa.end(), gen);
    std::shuffle(pc.begin(), pc.end(), gen);
    ASSERT_TRUE(majorizes(pc, pa));
    ASSERT_EQ(majorizes(a, c), majorizes(pa, pc));
  }
}

TEST(SchurProbe, Examples) {
  RngStream rng(1);
  auto entropy = [](const std::vector<double>& w) {
    double s = 0;
    for (double x : w) {
      if (x > 0) s -= x * std::log(x);
    }
    return s;
  };
  auto root_sum = [](const std::vector<double>& w) {
    double s = 0;
    for (double x : w) s += std::sqrt(x);
    return s;
  };
  auto max_entry = [](const std::vector<double>& w) { return *std::max_element(w.begin(), w.end()); };
  EXPECT_TRUE(schur_concavity_probe(entropy, 4, 5000, rng).empty());
  EXPECT_TRUE(schur_concavity_probe(root_sum, 4, 5000, rng).empty());
  const auto v = schur_concavity_probe(max_entry, 4, 2000, rng);
  ASSERT_FALSE(v.empty());
  for (const auto& s : v) {
    EXPECT_TRUE(majorizes(s.theta, s.eta));
    EXPECT_LT(s.f_theta, s.f_eta);
  }
  EXPECT_THROW(schur_concavity_probe(max_entry, 1, 1, rng), DomainError);
}

TEST(TChainProperty, SimilarlyOrderedStaysWithinBound) {
  std::mt19937_64 gen(12);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + t % 8;
    auto eta = random_vector(gen, n);
    auto theta = smoothed(gen, eta, 20);
    std::sort(eta.begin(), eta.end());
    std::sort(theta.begin(), theta.end());
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> e(n), th(n);
    for (std::size_t k = 0; k < n; ++k) {
      e[perm[k]] = eta[k];
      th[perm[k]] = theta[k];
    }
    const auto c = t_transform_chain(e, th);
    ASSERT_LE(max_abs_diff(replay(e, c), th), 1e-9);
    EXPECT_LE(c.size(), n - 1);
  }
}

TEST(TChain, ArrangementThatNeedsMoreThanNMinusOneSteps) {
  // No three positional T-transforms reach theta here; the chain still replays.
  const WeightVector eta{0.563112, 0.0, 0.222187, 0.117519};
  const WeightVector theta{0.033135, 0.420882, 0.115874, 0.332927};
  ASSERT_TRUE(majorizes(theta, eta));
  const auto c = t_transform_chain(eta, theta);
  EXPECT_LE(max_abs_diff(replay(eta.values(), c), theta.values()), 1e-9);
  EXPECT_GT(c.size(), 3u);
}
