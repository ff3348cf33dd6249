#include "sdom/class_h.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "sdom/errors.hpp"
#include "sdom/rng.hpp"

namespace sdom {

namespace {

MembershipVerdict rule_in(std::string rule) {
  return {MembershipStatus::In, VerdictMethod::AnalyticRule, std::nullopt, std::move(rule)};
}

MembershipVerdict rule_unknown(std::string rule) {
  return {MembershipStatus::Unknown, VerdictMethod::AnalyticRule, std::nullopt, std::move(rule)};
}

double g_of(const Distribution& d, double t) { return d.tail(1.0 / t); }

double x2_pdf(const Distribution& d, double x) { return x * x * d.pdf(x); }

bool midpoint_violated(double g_mid, double g_avg) {
  return g_mid < g_avg - concavity_tolerance(g_avg);
}

std::optional<Witness> midpoint_witness(const Distribution& d, double a, double b) {
  const double avg = 0.5 * (g_of(d, a) + g_of(d, b));
  const double mid = g_of(d, 0.5 * (a + b));
  if (midpoint_violated(mid, avg)) {
    return Witness{WitnessKind::MidpointConcavity, a, b, mid, avg};
  }
  return std::nullopt;
}

// Largest drop of x^2 f(x) below its running maximum, if it exceeds tolerance.
std::optional<Witness> density_drop(const Distribution& d, const std::vector<double>& xs,
                                    bool first_only) {
  double run_max = -std::numeric_limits<double>::infinity();
  double arg_max = 0.0;
  std::optional<Witness> best;
  double best_drop = 0.0;
  for (double x : xs) {
    const double h = x2_pdf(d, x);
    if (!std::isfinite(h)) continue;
    if (h > run_max) {
      run_max = h;
      arg_max = x;
      continue;
    }
    const double drop = run_max - h;
    if (drop > concavity_tolerance(run_max) && drop > best_drop) {
      best = Witness{WitnessKind::DensityMonotonicity, arg_max, x, h, run_max};
      best_drop = drop;
      if (first_only) break;
    }
  }
  return best;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(llo + step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

// Out rule: finite mean excludes (SD), hence H. The witness comes from a scan
// of x^2 f(x) far enough into the tail to pass the turning point.
MembershipVerdict rule_out_finite_mean(const Distribution& d, std::string rule) {
  const auto xs = log_grid(1e-6, 1e15, 4200);
  if (auto w = density_drop(d, xs, false)) {
    return {MembershipStatus::Out, VerdictMethod::AnalyticRule, w, std::move(rule)};
  }
  const auto numeric = numeric_h_check(d);
  if (numeric.status == MembershipStatus::Out) {
    return {MembershipStatus::Out, VerdictMethod::AnalyticRule, numeric.witness, std::move(rule)};
  }
  return rule_unknown(rule + " (no witness located)");
}

bool is_certified(const Distribution& d) {
  if (d.is_composite()) return d.h_certificate().has_value();
  return analytic_h_membership(d).status == MembershipStatus::In;
}

std::string certificate_of(const Distribution& d) {
  if (d.h_certificate()) return *d.h_certificate();
  return analytic_h_membership(d).rule_id;
}

Distribution::Composition compose(std::string kind, std::vector<Distribution> parts) {
  return {std::move(kind), std::move(parts), {}, {}};
}

class PowerModel final : public DistributionModel {
 public:
  PowerModel(Distribution base, double beta) : base_(std::move(base)), beta_(beta) {}
  double cdf(double x) const override {
    const double f = base_.cdf(x);
    return f <= 0.0 ? 0.0 : std::exp(beta_ * std::log(f));
  }
  double tail(double x) const override {
    return -std::expm1(beta_ * std::log1p(-base_.tail(x)));
  }
  bool has_pdf() const override { return base_.has_pdf(); }
  double pdf(double x) const override {
    const double f = base_.cdf(x);
    if (f <= 0.0) return beta_ == 1.0 ? base_.pdf(x) : 0.0;
    return beta_ * std::exp((beta_ - 1.0) * std::log(f)) * base_.pdf(x);
  }
  double quantile(double p) const override { return base_.quantile(std::pow(p, 1.0 / beta_)); }
  double support_low() const override { return base_.support_low(); }
  bool continuous() const override { return base_.continuous(); }

 private:
  Distribution base_;
  double beta_;
};

class ConvexTransformModel final : public DistributionModel {
 public:
  ConvexTransformModel(Distribution base, MonotoneMap phi)
      : base_(std::move(base)), phi_(std::move(phi)), low_(phi_.forward(base_.support_low())) {}
  double cdf(double x) const override { return x < low_ ? 0.0 : base_.cdf(phi_.inverse(x)); }
  double tail(double x) const override { return x < low_ ? 1.0 : base_.tail(phi_.inverse(x)); }
  bool has_pdf() const override { return base_.has_pdf() && phi_.inverse_derivative != nullptr; }
  double pdf(double x) const override {
    if (!has_pdf()) return DistributionModel::pdf(x);
    if (x < low_) return 0.0;
    return base_.pdf(phi_.inverse(x)) * phi_.inverse_derivative(x);
  }
  double quantile(double p) const override { return phi_.forward(base_.quantile(p)); }
  double draw(RngStream& rng) const override { return phi_.forward(base_.draw(rng)); }
  double support_low() const override { return low_; }
  bool continuous() const override { return base_.continuous(); }

 private:
  Distribution base_;
  MonotoneMap phi_;
  double low_;
};

class MaxModel final : public DistributionModel {
 public:
  MaxModel(Distribution a, Distribution b) : a_(std::move(a)), b_(std::move(b)) {}
  double cdf(double x) const override { return a_.cdf(x) * b_.cdf(x); }
  double tail(double x) const override {
    const double ta = a_.tail(x);
    const double tb = b_.tail(x);
    return ta + tb - ta * tb;
  }
  bool has_pdf() const override { return a_.has_pdf() && b_.has_pdf(); }
  double pdf(double x) const override {
    if (!has_pdf()) return DistributionModel::pdf(x);
    return a_.pdf(x) * b_.cdf(x) + a_.cdf(x) * b_.pdf(x);
  }
  double draw(RngStream& rng) const override {
    const double u = a_.draw(rng);
    const double v = b_.draw(rng);
    return std::max(u, v);
  }
  double support_low() const override { return std::max(a_.support_low(), b_.support_low()); }
  bool continuous() const override { return a_.continuous() && b_.continuous(); }

 private:
  Distribution a_;
  Distribution b_;
};

class MixtureModel final : public DistributionModel {
 public:
  MixtureModel(std::vector<double> w, std::vector<Distribution> ds)
      : w_(std::move(w)), ds_(std::move(ds)) {
    double acc = 0.0;
    for (double wi : w_) {
      acc += wi;
      cum_.push_back(acc);
    }
  }
  double cdf(double x) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) s += w_[i] * ds_[i].cdf(x);
    return std::min(1.0, s);
  }
  double tail(double x) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) s += w_[i] * ds_[i].tail(x);
    return std::min(1.0, s);
  }
  bool has_pdf() const override {
    return std::all_of(ds_.begin(), ds_.end(), [](const Distribution& d) { return d.has_pdf(); });
  }
  double pdf(double x) const override {
    if (!has_pdf()) return DistributionModel::pdf(x);
    double s = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) s += w_[i] * ds_[i].pdf(x);
    return s;
  }
  // Component selection, then a draw from that component.
  double draw(RngStream& rng) const override {
    const double u = rng.uniform() * cum_.back();
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    auto k = static_cast<std::size_t>(it - cum_.begin());
    if (k >= ds_.size()) k = ds_.size() - 1;
    while (w_[k] == 0.0 && k > 0) --k;
    return ds_[k].draw(rng);
  }
  double support_low() const override {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (w_[i] > 0.0) lo = std::min(lo, ds_[i].support_low());
    }
    return lo;
  }
  bool continuous() const override {
    return std::all_of(ds_.begin(), ds_.end(), [](const Distribution& d) { return d.continuous(); });
  }

 private:
  std::vector<double> w_;
  std::vector<Distribution> ds_;
  std::vector<double> cum_;
};

class DeductibleModel final : public DistributionModel {
 public:
  DeductibleModel(Distribution base, double c) : base_(std::move(base)), c_(c) {}
  double cdf(double x) const override { return x < 0.0 ? 0.0 : base_.cdf(x + c_); }
  double tail(double x) const override { return x < 0.0 ? 1.0 : base_.tail(x + c_); }
  double quantile(double p) const override {
    if (p <= base_.cdf(c_)) return 0.0;
    return std::max(0.0, base_.quantile(p) - c_);
  }
  double draw(RngStream& rng) const override { return std::max(0.0, base_.draw(rng) - c_); }
  double support_low() const override { return 0.0; }
  bool continuous() const override { return base_.cdf(c_) <= 0.0 && base_.continuous(); }

 private:
  Distribution base_;
  double c_;
};

void require_midpoint(const std::vector<double>& xs, const std::function<double(double)>& fn,
                      bool concave, const std::string& premise) {
  for (std::size_t k = 1; k + 1 < xs.size(); ++k) {
    const double a = xs[k - 1];
    const double b = xs[k + 1];
    const double fa = fn(a);
    const double fb = fn(b);
    const double fm = fn(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm)) break;
    const double avg = 0.5 * (fa + fb);
    const double tol = concavity_tolerance(avg);
    const bool bad = concave ? (fm < avg - tol) : (fm > avg + tol);
    if (bad) {
      throw ConditionFailed(premise, 0.5 * (a + b),
                            "value " + std::to_string(fm) + " vs chord " + std::to_string(avg));
    }
  }
}

}  // namespace

std::string_view to_string(MembershipStatus s) noexcept {
  switch (s) {
    case MembershipStatus::In: return "In";
    case MembershipStatus::Out: return "Out";
    case MembershipStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(VerdictMethod m) noexcept {
  return m == VerdictMethod::AnalyticRule ? "AnalyticRule" : "NumericGrid";
}

std::string_view to_string(WitnessKind k) noexcept {
  switch (k) {
    case WitnessKind::MidpointConcavity: return "MidpointConcavity";
    case WitnessKind::DensityMonotonicity: return "DensityMonotonicity";
    case WitnessKind::Superadditivity: return "Superadditivity";
  }
  return "Unknown";
}

std::string_view MembershipVerdict::label() const noexcept {
  switch (status) {
    case MembershipStatus::In:
      return method == VerdictMethod::AnalyticRule ? "certified" : "evidence";
    case MembershipStatus::Out: return "refuted";
    case MembershipStatus::Unknown: return "undecided";
  }
  return "undecided";
}

std::vector<double> GridSpec::nodes() const {
  if (!(lo > 0.0) || !(hi > lo) || points < 3) {
    throw DomainError("grid needs 0 < lo < hi and at least 3 points");
  }
  return log_grid(lo, hi, points);
}

double concavity_tolerance(double value) noexcept { return 1e-9 * std::max(1.0, std::abs(value)); }

bool witness_reproduces(const Distribution& d, const Witness& w) {
  switch (w.kind) {
    case WitnessKind::MidpointConcavity:
      return midpoint_witness(d, w.x1, w.x2).has_value();
    case WitnessKind::DensityMonotonicity: {
      if (!d.has_pdf() || !(w.x1 < w.x2)) return false;
      const double lhs = x2_pdf(d, w.x2);
      const double rhs = x2_pdf(d, w.x1);
      return lhs < rhs - concavity_tolerance(rhs);
    }
    case WitnessKind::Superadditivity: {
      const double lhs = g_of(d, w.x1) + g_of(d, w.x2);
      const double rhs = g_of(d, w.x1 + w.x2);
      return lhs < rhs - concavity_tolerance(rhs);
    }
  }
  return false;
}

MembershipVerdict analytic_h_membership(const Distribution& d) {
  switch (d.family()) {
    case Family::Pareto: {
      const double a = d.param("alpha");
      if (a <= 1.0) return rule_in("pareto: alpha<=1");
      return rule_out_finite_mean(d, "pareto: alpha>1 has finite mean");
    }
    case Family::Frechet: {
      const double a = d.param("alpha");
      if (a <= 1.0) return rule_in("frechet: alpha<=1");
      return rule_out_finite_mean(d, "frechet: alpha>1 has finite mean");
    }
    case Family::AbsCauchy: return rule_in("abs_cauchy: always");
    case Family::LogCauchy: return rule_in("log_cauchy: always");
    case Family::InverseGamma: {
      const double a = d.param("alpha");
      if (a <= 1.0) return rule_in("inverse_gamma: alpha<=1");
      return rule_out_finite_mean(d, "inverse_gamma: alpha>1 has finite mean");
    }
    case Family::FellerPareto: {
      const double g = d.param("gamma");
      const double g1 = d.param("gamma1");
      if (g >= g1) return rule_in("feller_pareto: gamma>=gamma1");
      return rule_out_finite_mean(d, "feller_pareto: gamma<gamma1 has finite mean");
    }
    case Family::LogPareto: {
      if (d.param("alpha") <= 2.0) return rule_in("log_pareto: alpha<=2");
      return rule_unknown("log_pareto: alpha>2 outside rule table");
    }
    case Family::InverseBurr: {
      if (d.param("tau") <= 1.0) return rule_in("inverse_burr: tau<=1");
      return rule_out_finite_mean(d, "inverse_burr: tau>1 has finite mean");
    }
    case Family::Stoppa: {
      const double a = d.param("alpha");
      const double b = d.param("beta");
      if (a <= 1.0 && b >= 1.0) return rule_in("stoppa: alpha<=1, beta>=1");
      if (a > 1.0) return rule_out_finite_mean(d, "stoppa: alpha>1 has finite mean");
      return rule_unknown("stoppa: beta<1 outside rule table");
    }
    case Family::PointMass: return rule_unknown("point_mass: outside rule table");
    case Family::Composite: break;
  }
  throw UnsupportedFamily("analytic rules cover zoo families only, got " + d.describe());
}

MembershipVerdict numeric_h_check(const Distribution& d, const GridSpec& grid) {
  const auto ts = grid.nodes();
  auto out = [](Witness w, const char* rule) {
    return MembershipVerdict{MembershipStatus::Out, VerdictMethod::NumericGrid, w, rule};
  };

  std::vector<double> g(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) g[k] = g_of(d, ts[k]);

  for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
    const double a = ts[k - 1];
    const double b = ts[k + 1];
    const double avg = 0.5 * (g[k - 1] + g[k + 1]);
    const double mid = g_of(d, 0.5 * (a + b));
    if (midpoint_violated(mid, avg)) {
      return out({WitnessKind::MidpointConcavity, a, b, mid, avg}, "numeric: adjacent midpoint");
    }
  }

  RngStream rng(grid.seed);
  const auto n = static_cast<std::uint64_t>(ts.size());
  for (std::size_t r = 0; r < grid.random_pairs; ++r) {
    auto i = static_cast<std::size_t>(rng.next_u64() % n);
    auto j = static_cast<std::size_t>(rng.next_u64() % n);
    if (i > j) std::swap(i, j);
    if (j < i + 2) continue;
    const double avg = 0.5 * (g[i] + g[j]);
    const double mid = g_of(d, 0.5 * (ts[i] + ts[j]));
    if (midpoint_violated(mid, avg)) {
      return out({WitnessKind::MidpointConcavity, ts[i], ts[j], mid, avg},
                 "numeric: random-pair midpoint");
    }
  }

  if (d.has_pdf()) {
    if (auto w = density_drop(d, ts, true)) return out(*w, "numeric: x^2 pdf decreasing");
  }
  return {MembershipStatus::In, VerdictMethod::NumericGrid, std::nullopt,
          "numeric: no violation on grid"};
}

MembershipVerdict hstar_check(const Distribution& d, const GridSpec& grid) {
  const auto ts = grid.nodes();
  std::vector<double> g(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) g[k] = g_of(d, ts[k]);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i; j < ts.size(); ++j) {
      const double lhs = g[i] + g[j];
      const double rhs = g_of(d, ts[i] + ts[j]);
      if (lhs < rhs - concavity_tolerance(rhs)) {
        return {MembershipStatus::Out, VerdictMethod::NumericGrid,
                Witness{WitnessKind::Superadditivity, ts[i], ts[j], lhs, rhs},
                "numeric: superadditivity"};
      }
    }
  }
  return {MembershipStatus::In, VerdictMethod::NumericGrid, std::nullopt,
          "numeric: no superadditivity violation on grid"};
}

MembershipVerdict closure_verdict(const Distribution& d) {
  if (d.h_certificate()) return rule_in(*d.h_certificate());
  return rule_unknown("no closure certificate");
}

MembershipVerdict h_membership(const Distribution& d, const GridSpec& grid) {
  const MembershipVerdict v = d.is_composite() ? closure_verdict(d) : analytic_h_membership(d);
  if (v.status != MembershipStatus::Unknown) return v;
  return numeric_h_check(d, grid);
}

Distribution power_transform(const Distribution& d, double beta) {
  if (!(beta >= 1.0) || !std::isfinite(beta)) throw DomainError("power_transform needs beta >= 1");
  if (!d.continuous()) throw DomainError("power_transform needs a continuous law");
  Distribution out(Family::Composite, {{"beta", beta}}, std::make_shared<PowerModel>(d, beta),
                   compose("power", {d}));
  if (is_certified(d)) return out.with_h_certificate("power(" + certificate_of(d) + ")");
  return out;
}

MonotoneMap identity_map() {
  return {"identity", {}, [](double x) { return x; }, [](double y) { return y; },
          [](double) { return 1.0; }};
}

MonotoneMap power_map(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("power_map needs p >= 1");
  return {"power",
          {{"p", p}},
          [p](double x) { return x <= 0.0 ? 0.0 : std::pow(x, p); },
          [p](double y) { return y <= 0.0 ? 0.0 : std::pow(y, 1.0 / p); },
          [p](double y) { return y <= 0.0 ? 0.0 : std::pow(y, 1.0 / p - 1.0) / p; }};
}

MonotoneMap expm1_map() {
  return {"expm1", {}, [](double x) { return std::expm1(x); },
          [](double y) { return std::log1p(y); }, [](double y) { return 1.0 / (1.0 + y); }};
}

Distribution convex_transform(const Distribution& d, const MonotoneMap& phi, const GridSpec& grid) {
  if (!phi.forward || !phi.inverse) throw DomainError("monotone map needs forward and inverse");
  if (std::abs(phi.forward(0.0)) > 1e-12) {
    throw ConditionFailed("phi(0) = 0", 0.0, "phi(0) = " + std::to_string(phi.forward(0.0)));
  }
  const auto xs = grid.nodes();
  std::vector<double> finite_xs{0.0};
  for (double x : xs) {
    if (!std::isfinite(phi.forward(x))) break;
    finite_xs.push_back(x);
  }
  for (std::size_t k = 1; k < finite_xs.size(); ++k) {
    if (!(phi.forward(finite_xs[k]) > phi.forward(finite_xs[k - 1]))) {
      throw ConditionFailed("phi strictly increasing", finite_xs[k], "");
    }
  }
  require_midpoint(finite_xs, phi.forward, false, "phi convex");
  require_midpoint(xs, [&](double x) { return 1.0 / phi.inverse(1.0 / x); }, true,
                   "1/phi^{-1}(1/x) concave");

  Distribution::Composition comp = compose("convex", {d});
  comp.map_name = phi.name;
  Distribution out(Family::Composite, phi.params, std::make_shared<ConvexTransformModel>(d, phi),
                   std::move(comp));
  if (d.continuous() && is_certified(d)) {
    return out.with_h_certificate("convex[" + phi.name + "](" + certificate_of(d) + ")");
  }
  return out;
}

Distribution max_of(const Distribution& d1, const Distribution& d2) {
  Distribution out(Family::Composite, {}, std::make_shared<MaxModel>(d1, d2),
                   compose("max", {d1, d2}));
  if (d1.continuous() && d2.continuous() && is_certified(d1) && is_certified(d2)) {
    return out.with_h_certificate("max(" + certificate_of(d1) + "; " + certificate_of(d2) + ")");
  }
  return out;
}

Distribution mixture(const std::vector<double>& weights, const std::vector<Distribution>& ds) {
  if (weights.empty() || weights.size() != ds.size()) {
    throw WeightError("mixture needs one weight per component");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw WeightError("mixture weights must be finite and >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw WeightError("mixture weights must sum to 1, got " + std::to_string(total));
  }
  Distribution::Composition comp = compose("mixture", ds);
  comp.weights = weights;
  Distribution out(Family::Composite, {}, std::make_shared<MixtureModel>(weights, ds),
                   std::move(comp));
  std::string cert = "mixture(";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (weights[i] == 0.0) continue;
    if (!is_certified(ds[i])) return out;
    cert += (cert.back() == '(' ? "" : "; ") + certificate_of(ds[i]);
  }
  return out.with_h_certificate(cert + ")");
}

Distribution deductible(const Distribution& d, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("deductible needs c > 0");
  Distribution out(Family::Composite, {{"c", c}}, std::make_shared<DeductibleModel>(d, c),
                   compose("deductible", {d}));
  if (is_certified(d)) return out.with_h_certificate("deductible(" + certificate_of(d) + ")");
  return out;
}

}  // namespace sdom
