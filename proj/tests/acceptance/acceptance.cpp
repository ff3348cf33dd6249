// One line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sdom/class_h.hpp"
#include "sdom/compound.hpp"
#include "sdom/distribution_spec.hpp"
#include "sdom/dominance.hpp"
#include "sdom/ecdf.hpp"
#include "sdom/majorization.hpp"
#include "sdom/stable.hpp"

using namespace sdom;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double uni(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

std::size_t pick(std::mt19937_64& g, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> random_simplex(std::mt19937_64& g, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  double s = 0;
  for (auto& x : w) s += x = e(g);
  for (auto& x : w) x /= s;
  return w;
}

// theta = P eta with P a random convex combination of permutations.
std::vector<double> doubly_stochastic_image(std::mt19937_64& g, const std::vector<double>& eta) {
  const std::size_t n = eta.size();
  const std::size_t terms = pick(g, 1, 4);
  const auto c = random_simplex(g, terms);
  std::vector<double> theta(n, 0.0);
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < terms; ++k) {
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), g);
    for (std::size_t i = 0; i < n; ++i) theta[i] += c[k] * eta[perm[i]];
  }
  return theta;
}

bool is_in(const MembershipVerdict& v) { return v.status == MembershipStatus::In; }

// ---------------------------------------------------------------------------

Outcome criterion1() {
  std::mt19937_64 g(101);
  const std::vector<std::function<Distribution()>> families{
      [&] { return pareto(uni(g, 0.2, 3.0)); },
      [&] { return log_pareto(uni(g, 0.2, 4.0)); },
      [&] { return inverse_burr(uni(g, 0.2, 3.0), uni(g, 0.2, 3.0)); },
      [&] { return stoppa(uni(g, 0.2, 3.0), uni(g, 0.2, 3.0)); },
      [&] { return log_cauchy(); },
      [&] { return frechet(uni(g, 0.2, 3.0)); },
      [&] { return abs_cauchy(); },
      [&] { return inverse_gamma(uni(g, 0.2, 3.0), uni(g, 0.2, 5.0)); },
      [&] { return feller_pareto(uni(g, 0.2, 3.0), uni(g, 0.2, 3.0), uni(g, 0.2, 3.0)); },
  };
  GridSpec grid;
  grid.points = 1000;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t fired = 0, agree = 0, cases = 0;
  std::ostringstream bad;
  for (const auto& make : families) {
    for (int k = 0; k < 20; ++k) {
      const auto d = make();
      ++cases;
      const auto rule = analytic_h_membership(d);
      if (rule.status == MembershipStatus::Unknown) continue;
      ++fired;
      const auto num = numeric_h_check(d, grid);
      if (num.status == rule.status) {
        ++agree;
      } else if (bad.tellp() < 300) {
        bad << " " << d.describe() << " rule=" << to_string(rule.status)
            << " numeric=" << to_string(num.status) << ";";
      }
    }
  }
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = agree == fired && t < 10.0;
  std::ostringstream s;
  s << cases << " laws, rule fired on " << fired << ", agreement " << agree << "/" << fired
    << ", " << t << " s (limit 10 s)" << bad.str();
  o.detail = s.str();
  return o;
}

Outcome criterion2() {
  const std::vector<std::pair<double, double>> params{{0.1, 0.0}, {0.1, -0.4}, {0.9, 0.0}, {0.9, 0.3}};
  const std::vector<std::vector<double>> quads{{1, 4, 2, 3}, {2, 6, 3, 5}, {3, 8, 5, 6}};
  const std::size_t n = 10000;
  const double tol = 2 * dkw_epsilon(n, 0.01);
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  double worst = -1.0;
  int failures = 0;
  for (const auto& [alpha, beta] : params) {
    for (const auto& w : quads) {
      const auto t = figure_data(alpha, beta, w, n, 0);
      for (std::size_t i = 0; i < t.x.size(); ++i) worst = std::max(worst, t.f2[i] - t.f1[i]);
      bool ok = true;
      for (std::size_t i = 0; i < t.x.size(); ++i) ok = ok && t.f1[i] >= t.f2[i] - tol;
      failures += !ok;
    }
  }
  const double secs = seconds_since(t0);
  o.pass = failures == 0 && secs < 30.0;
  std::ostringstream s;
  s << "12 cases, " << failures << " with F1 < F2 - " << tol << ", max(F2 - F1) = " << worst << ", "
    << secs << " s (limit 30 s)";
  o.detail = s.str();
  return o;
}

Outcome criterion3() {
  std::mt19937_64 g(303);
  RngStream root(303);
  const std::size_t n = 100000;
  const double band = dkw_two_sample(n, n, 0.01);
  int failures = 0;
  double worst = 0.0;
  for (int c = 0; c < 40; ++c) {
    const bool one = c >= 20;
    const StableParams standard{one ? 1.0 : uni(g, 0.2, 0.95), one ? uni(g, 0.0, 1.0) : 1.0, 1.0, 0.0};
    const auto w = random_simplex(g, pick(g, 2, 5));
    const auto law = weighted_sum_law(standard, w);
    RngStream sum_rng = root.fork(2 * static_cast<std::uint64_t>(c));
    RngStream ref_rng = root.fork(2 * static_cast<std::uint64_t>(c) + 1);
    std::vector<double> sums(n);
    for (auto& s : sums) {
      s = 0.0;
      for (double wi : w) s += wi * draw_stable(standard, sum_rng);
    }
    auto ref = sample_stable(law.reference, ref_rng, n);
    for (auto& x : ref) x = law.scale * x + law.shift;
    const double ks = ks_two_sample(Ecdf(std::move(sums)), Ecdf(ref));
    worst = std::max(worst, ks);
    failures += !(ks < band);
  }
  Outcome o;
  o.pass = failures == 0;
  std::ostringstream s;
  s << "40 cases, max KS " << worst << " vs band " << band << ", " << failures << " above";
  o.detail = s.str();
  return o;
}

Outcome criterion4() {
  const auto d = pareto(1.0);
  const std::size_t n = 1000000;
  RngStream root(404);
  int failures = 0;
  double worst_ratio = 0.0;
  double worst_err = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const double a = 0.1 * k;
    RngStream rng = root.fork(static_cast<std::uint64_t>(k));
    std::vector<double> s(n);
    for (auto& v : s) {
      const double x1 = d.draw(rng);
      v = a * x1 + (1 - a) * d.draw(rng);
    }
    const Ecdf e(std::move(s));
    for (double x : {1.0, 2.0, 5.0, 10.0}) {
      const auto ex = exact_two_weight_tail_detail(d, a, x);
      const double mc = 1.0 - e(x);
      const double tol = 3 * std::sqrt(ex.value * (1 - ex.value) / n) + 1e-6;
      const double diff = std::abs(ex.value - mc);
      worst_ratio = std::max(worst_ratio, diff / tol);
      worst_err = std::max(worst_err, ex.error_estimate);
      failures += !(diff <= tol) || !(ex.error_estimate <= 1e-8);
    }
  }
  Outcome o;
  o.pass = failures == 0;
  std::ostringstream s;
  s << "20 (a,x) points, worst |exact - MC| / tolerance = " << worst_ratio
    << ", worst quadrature error estimate " << worst_err << ", " << failures << " failures";
  o.detail = s.str();
  return o;
}

Outcome criterion5() {
  const auto levy = parse_distribution(R"({"family": "levy", "params": {"c": 1}})");
  const double v = exact_two_weight_tail(levy, 0.5, 2.0);
  const double ref = std::erf(1.0 / std::sqrt(2.0));
  Outcome o;
  o.pass = std::abs(v - ref) <= 1e-6;
  std::ostringstream s;
  s.precision(12);
  s << "tail " << v << " vs erf(1/sqrt 2) " << ref << ", diff " << std::abs(v - ref);
  o.detail = s.str();
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::ostringstream s;
  // (a) class H severity, random majorization pairs.
  {
    const CompoundPoissonSpec spec(0.5, pareto(1.0));
    const Sampler draw = [&](RngStream& r) { return draw_cp(spec, r); };
    std::mt19937_64 g(606);
    RngStream rng(606);
    int consistent = 0;
    for (int k = 0; k < 10; ++k) {
      const auto eta = random_simplex(g, pick(g, 2, 5));
      const auto theta = doubly_stochastic_image(g, eta);
      const auto r = mc_dominance_test(draw, WeightVector(theta), WeightVector(eta), 100000, 0.01, rng);
      consistent += r.verdict == DominanceVerdict::ConsistentWithSD;
    }
    o.pass = consistent == 10;
    s << "(a) " << consistent << "/10 consistent";
  }
  // (b) lattice severity.
  {
    const double lam = 0.05;
    const CompoundPoissonSpec spec(lam, point_mass(1.0));
    const Sampler draw = [&](RngStream& r) { return draw_cp(spec, r); };
    RngStream rng(607);
    const auto r = mc_dominance_test(draw, WeightVector({0.5, 0.5}), WeightVector({0.9, 0.1}), 100000, 0.01, rng);
    bool ok = r.verdict == DominanceVerdict::ViolationFound && r.max_violation.has_value();
    if (ok) {
      const double x = r.max_violation->x;
      const double exact_gap =
          oracle::weighted_poisson_cdf(lam, 0.9, 0.1, x) - oracle::weighted_poisson_cdf(lam, 0.5, 0.5, x);
      ok = exact_gap < 0 && std::abs(r.max_violation->gap - exact_gap) <= r.band;
      s << "; (b) MC gap " << r.max_violation->gap << " at x=" << x << ", band " << r.band
        << ", exact gap " << exact_gap;
    } else {
      s << "; (b) no violation detected";
    }
    o.pass = o.pass && ok;
  }
  o.detail = s.str();
  return o;
}

Distribution random_in_base(std::mt19937_64& g) {
  switch (pick(g, 0, 8)) {
    case 0: return pareto(uni(g, 0.2, 1.0));
    case 1: return frechet(uni(g, 0.2, 1.0));
    case 2: return abs_cauchy();
    case 3: return log_cauchy();
    case 4: return inverse_gamma(uni(g, 0.2, 1.0), uni(g, 0.2, 5.0));
    case 5: return log_pareto(uni(g, 0.2, 2.0));
    case 6: return inverse_burr(uni(g, 0.2, 1.0), uni(g, 0.2, 3.0));
    case 7: return stoppa(uni(g, 0.2, 1.0), uni(g, 1.0, 3.0));
    default: {
      const double g1 = uni(g, 0.2, 2.0);
      return feller_pareto(g1 + uni(g, 0.0, 1.0), g1, uni(g, 0.2, 3.0));
    }
  }
}

Distribution random_composition(std::mt19937_64& g, int depth) {
  if (depth == 0) return random_in_base(g);
  const auto inner = random_composition(g, depth - 1);
  auto op = pick(g, 0, 3);
  // Powers are only defined for continuous laws.
  if (op == 0 && !inner.continuous()) op = 1;
  switch (op) {
    case 0: return power_transform(inner, uni(g, 1.0, 5.0));
    case 1: return max_of(inner, random_in_base(g));
    case 2: {
      const std::size_t k = pick(g, 2, 3);
      std::vector<Distribution> parts{inner};
      while (parts.size() < k) parts.push_back(random_in_base(g));
      auto w = random_simplex(g, k);
      double s = 0;
      for (std::size_t i = 0; i + 1 < k; ++i) s += w[i];
      w[k - 1] = 1.0 - s;
      return mixture(w, parts);
    }
    default: return deductible(inner, uni(g, 0.05, 10.0));
  }
}

Outcome criterion7() {
  std::mt19937_64 g(707);
  GridSpec grid;
  grid.points = 1000;
  int h_pass = 0, hs_pass = 0;
  std::ostringstream bad;
  for (int k = 0; k < 100; ++k) {
    const auto d = random_composition(g, static_cast<int>(pick(g, 1, 3)));
    const bool a = is_in(numeric_h_check(d, grid));
    const bool b = is_in(hstar_check(d, grid));
    h_pass += a;
    hs_pass += b;
    if ((!a || !b) && bad.tellp() < 400) bad << " " << d.describe() << (a ? "" : " [H]") << (b ? "" : " [H*]") << ";";
  }
  Outcome o;
  o.pass = h_pass == 100 && hs_pass == 100;
  std::ostringstream s;
  s << "100 compositions, numeric H " << h_pass << "/100 (" << grid.points << " points), H* " << hs_pass
    << "/100 (" << grid.points << " points)" << bad.str();
  o.detail = s.str();
  return o;
}

Outcome criterion8() {
  std::mt19937_64 g(808);
  int replay_fail = 0, length_fail = 0, similar_over = 0;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = pick(g, 2, 8);
    auto eta = random_simplex(g, n);
    if (pick(g, 0, 3) == 0) eta[pick(g, 0, n - 1)] = 0.0;
    const auto theta = doubly_stochastic_image(g, eta);
    const auto chain = t_transform_chain(WeightVector(eta), WeightVector(theta));
    const auto back = replay(eta, chain);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(back[i] - theta[i]));
    worst = std::max(worst, err);
    replay_fail += !(err <= 1e-9);
    if (chain.size() > n - 1) {
      ++length_fail;
      bool similar = true;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) similar = similar && (eta[i] - eta[j]) * (theta[i] - theta[j]) >= 0;
      }
      similar_over += similar;
    }
  }
  RngStream rng(808);
  const auto entropy = [](const std::vector<double>& w) {
    double s = 0;
    for (double x : w) if (x > 0) s -= x * std::log(x);
    return s;
  };
  const auto root_sum = [](const std::vector<double>& w) {
    double s = 0;
    for (double x : w) s += std::sqrt(x);
    return s;
  };
  std::size_t schur = 0;
  for (std::size_t n : {2u, 3u, 5u, 8u}) {
    schur += schur_concavity_probe(entropy, n, 2500, rng).size();
    schur += schur_concavity_probe(root_sum, n, 2500, rng).size();
  }
  Outcome o;
  o.pass = replay_fail == 0 && length_fail == 0 && schur == 0;
  std::ostringstream s;
  s << "1000 chains: " << replay_fail << " replay failures (max err " << worst << "), " << length_fail
    << " longer than n-1 (" << similar_over
    << " of them with theta ordered like eta); Schur probe 2 x 10000 trials: " << schur << " violations";
  o.detail = s.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Outcome (*)()> criteria{criterion1, criterion2, criterion3, criterion4,
                                            criterion5, criterion6, criterion7, criterion8};
  std::vector<bool> selected(criteria.size(), argc <= 1);
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k >= 1 && k <= static_cast<int>(criteria.size())) selected[static_cast<std::size_t>(k - 1)] = true;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %zu: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
