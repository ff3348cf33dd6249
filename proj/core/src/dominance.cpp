#include "sdom/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "sdom/ecdf.hpp"
#include "sdom/errors.hpp"
#include "sdom/stable.hpp"

namespace sdom {

namespace {

void check_run(std::size_t n, double delta) {
  if (n < 1000) throw DomainError("Monte-Carlo tests need n >= 1000");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
}

std::vector<double> portfolio(const Sampler& draw, const WeightVector& w, std::size_t n,
                              const RngStream& stream) {
  std::vector<RngStream> comps;
  for (std::size_t i = 0; i < w.size(); ++i) comps.push_back(stream.fork(i + 1));
  std::vector<double> out(n);
  for (auto& s : out) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * draw(comps[i]);
    s = acc;
  }
  return out;
}

Sampler sampler_of(const Distribution& d) {
  return [d](RngStream& rng) { return d.draw(rng); };
}

double tail_at(const Distribution& d, double x) { return d.tail(x); }

}  // namespace

std::string_view to_string(DominanceVerdict v) noexcept {
  switch (v) {
    case DominanceVerdict::ConsistentWithSD: return "ConsistentWithSD";
    case DominanceVerdict::ViolationFound: return "ViolationFound";
    case DominanceVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

DominanceReport compare_samples(std::vector<double> eta_sample, std::vector<double> theta_sample,
                                double delta) {
  if (eta_sample.empty() || eta_sample.size() != theta_sample.size()) {
    throw LengthMismatch("samples must be nonempty and of equal size");
  }
  DominanceReport r;
  r.n = eta_sample.size();
  r.delta = delta;
  r.dkw_eps = dkw_epsilon(r.n, delta);
  r.band = dkw_two_sample(r.n, r.n, delta);
  auto has_nan = [](const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [](double x) { return std::isnan(x); });
  };
  if (has_nan(eta_sample) || has_nan(theta_sample)) return r;

  std::sort(eta_sample.begin(), eta_sample.end());
  std::sort(theta_sample.begin(), theta_sample.end());
  r.grid.reserve(2 * r.n);
  std::merge(eta_sample.begin(), eta_sample.end(), theta_sample.begin(), theta_sample.end(),
             std::back_inserter(r.grid));
  r.grid.erase(std::unique(r.grid.begin(), r.grid.end()), r.grid.end());

  const double n = static_cast<double>(r.n);
  r.f_eta.resize(r.grid.size());
  r.f_theta.resize(r.grid.size());
  r.gap.resize(r.grid.size());
  std::size_t i = 0;
  std::size_t j = 0;
  r.min_gap = {r.grid.front(), 0.0};
  bool first = true;
  for (std::size_t k = 0; k < r.grid.size(); ++k) {
    const double x = r.grid[k];
    while (i < eta_sample.size() && eta_sample[i] <= x) ++i;
    while (j < theta_sample.size() && theta_sample[j] <= x) ++j;
    r.f_eta[k] = static_cast<double>(i) / n;
    r.f_theta[k] = static_cast<double>(j) / n;
    r.gap[k] = r.f_eta[k] - r.f_theta[k];
    if (first || r.gap[k] < r.min_gap.gap) {
      r.min_gap = {x, r.gap[k]};
      first = false;
    }
    if (r.gap[k] < -r.band) ++r.violation_count;
  }
  if (r.violation_count > 0) {
    r.verdict = DominanceVerdict::ViolationFound;
    r.max_violation = r.min_gap;
  } else {
    r.verdict = DominanceVerdict::ConsistentWithSD;
  }
  return r;
}

DominanceReport mc_dominance_test(const Sampler& draw, const WeightVector& theta,
                                  const WeightVector& eta, std::size_t n, double delta,
                                  RngStream& rng) {
  if (!majorizes(theta, eta)) throw NotMajorized("theta is not majorized by eta");
  check_run(n, delta);
  const RngStream base(rng.next_u64());
  auto s_eta = portfolio(draw, eta, n, base.fork(1));
  auto s_theta = portfolio(draw, theta, n, base.fork(2));
  return compare_samples(std::move(s_eta), std::move(s_theta), delta);
}

DominanceReport mc_dominance_test(const Distribution& d, const WeightVector& theta,
                                  const WeightVector& eta, std::size_t n, double delta,
                                  RngStream& rng) {
  return mc_dominance_test(sampler_of(d), theta, eta, n, delta, rng);
}

DominanceReport sd_star_test(const Sampler& draw, const WeightVector& theta, std::size_t n,
                             double delta, RngStream& rng) {
  std::vector<double> concentrated(theta.size(), 0.0);
  concentrated[0] = theta.sum();
  return mc_dominance_test(draw, theta, WeightVector(concentrated), n, delta, rng);
}

DominanceReport sd_star_test(const Distribution& d, const WeightVector& theta, std::size_t n,
                             double delta, RngStream& rng) {
  return sd_star_test(sampler_of(d), theta, n, delta, rng);
}

ExactTail exact_two_weight_tail_detail(const Distribution& d, double a, double x,
                                       const QuadratureSpec& quad) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("weight a must lie in (0, 1)");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("x must be finite and >= 0");
  const double low = d.support_low();
  if (low < 0.0) throw DomainError("exact tail needs a law on [0, inf)");
  if (x <= 0.0 && d.continuous()) return {1.0, 0.0, 0};

  const double b = 1.0 - a;
  auto inner = [&](double y) {
    return tail_at(d, (x - a * y) / b) + tail_at(d, (x - b * y) / a);
  };

  const double tx = d.tail(x);
  const double fx = d.cdf(x);
  double value = tx * tx;
  const double atom = d.continuous() ? 0.0 : std::min(d.cdf(low), fx);
  if (atom > 0.0) value += atom * inner(low);

  if (fx <= atom) return {value, 0.0, 0};
  const auto res = integrate([&](double p) { return inner(d.quantile(p)); }, atom, fx, quad);
  return {value + res.value, res.error_estimate, res.evaluations};
}

double exact_two_weight_tail(const Distribution& d, double a, double x, const QuadratureSpec& quad) {
  return exact_two_weight_tail_detail(d, a, x, quad).value;
}

std::vector<SuffViolation> suff_condition_scan(const Distribution& d, const SuffScanGrid& grid) {
  std::vector<double> zs = grid.zs;
  if (zs.empty()) {
    for (int k = 0; k < 25; ++k) zs.push_back(std::pow(10.0, -3.0 + 6.0 * k / 24.0));
  }
  std::vector<double> ws = grid.weights;
  if (ws.empty()) {
    for (int k = 1; k <= 10; ++k) ws.push_back(0.05 * k);
  }
  for (double w : ws) {
    if (!(w > 0.0 && w <= 0.5)) throw DomainError("scan weights must lie in (0, 1/2]");
  }
  std::sort(ws.begin(), ws.end());

  auto side = [&](double y, double z, double t) {
    return d.tail(y + z / (1.0 - t)) + d.tail(y + z / t);
  };
  std::vector<SuffViolation> out;
  for (double y : grid.ys) {
    for (double z : zs) {
      for (std::size_t e = 0; e < ws.size(); ++e) {
        const double rhs = side(y, z, ws[e]);
        for (std::size_t t = e; t < ws.size(); ++t) {
          const double lhs = side(y, z, ws[t]);
          if (lhs < rhs - grid.rel_tol * std::max(1.0, std::abs(rhs))) {
            out.push_back({y, z, ws[t], ws[e], lhs, rhs});
          }
        }
      }
    }
  }
  return out;
}

FigureTable figure_data(double alpha, double beta, const std::vector<double>& weights,
                        std::size_t n, std::uint64_t seed) {
  if (weights.size() != 4) throw LengthMismatch("figure weights need (a1, a2, b1, b2)");
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw WeightError("figure weights must be nonnegative");
  }
  const StableParams p{alpha, beta, 1.0, 0.0};
  RngStream root(seed);
  RngStream r1 = root.fork(1);
  RngStream r2 = root.fork(2);
  const auto x1 = sample_stable(p, r1, n);
  const auto x2 = sample_stable(p, r2, n);
  std::vector<double> y1(n);
  std::vector<double> y2(n);
  for (std::size_t i = 0; i < n; ++i) {
    y1[i] = weights[0] * std::abs(x1[i]) + weights[1] * std::abs(x2[i]);
    y2[i] = weights[2] * std::abs(x1[i]) + weights[3] * std::abs(x2[i]);
  }
  const Ecdf e1(std::move(y1));
  const Ecdf e2(std::move(y2));
  FigureTable t;
  t.n = n;
  std::merge(e1.sorted().begin(), e1.sorted().end(), e2.sorted().begin(), e2.sorted().end(),
             std::back_inserter(t.x));
  t.x.erase(std::unique(t.x.begin(), t.x.end()), t.x.end());
  t.f1.reserve(t.x.size());
  t.f2.reserve(t.x.size());
  for (double x : t.x) {
    t.f1.push_back(e1(x));
    t.f2.push_back(e2(x));
  }
  return t;
}

std::string report_json(const DominanceReport& r, double clip_quantile, std::size_t profile_points) {
  using nlohmann::json;
  json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["n"] = r.n;
  j["delta"] = r.delta;
  j["dkw_eps"] = r.dkw_eps;
  j["band"] = r.band;
  j["grid_size"] = r.grid.size();
  j["violation_count"] = r.violation_count;
  j["min_gap"] = {{"x", r.min_gap.x}, {"gap", r.min_gap.gap}};
  if (r.max_violation) {
    j["max_violation"] = {{"x", r.max_violation->x}, {"gap", r.max_violation->gap}};
  } else {
    j["max_violation"] = nullptr;
  }
  json profile = json::array();
  if (!r.grid.empty()) {
    const auto limit = static_cast<std::size_t>(
        std::ceil(std::clamp(clip_quantile, 0.0, 1.0) * static_cast<double>(r.grid.size())));
    const std::size_t kept = std::max<std::size_t>(1, std::min(limit, r.grid.size()));
    const std::size_t step = std::max<std::size_t>(1, kept / std::max<std::size_t>(1, profile_points));
    for (std::size_t k = 0; k < kept; k += step) {
      profile.push_back({{"x", r.grid[k]}, {"f_eta", r.f_eta[k]}, {"f_theta", r.f_theta[k]},
                         {"gap", r.gap[k]}});
    }
    j["clip_x"] = r.grid[kept - 1];
  }
  j["gap_profile"] = profile;
  return j.dump(2);
}

}  // namespace sdom
