#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdom/distribution.hpp"

namespace sdom {

enum class MembershipStatus { In, Out, Unknown };
enum class VerdictMethod { AnalyticRule, NumericGrid };

std::string_view to_string(MembershipStatus s) noexcept;
std::string_view to_string(VerdictMethod m) noexcept;

/// Which defining inequality a witness violates. With g(t) = tail(1/t):
///   MidpointConcavity   g((x1+x2)/2) >= (g(x1)+g(x2))/2
///   DensityMonotonicity x^2 pdf(x) nondecreasing, x1 < x2
///   Superadditivity     g(x1) + g(x2) >= g(x1+x2)
enum class WitnessKind { MidpointConcavity, DensityMonotonicity, Superadditivity };

std::string_view to_string(WitnessKind k) noexcept;

/// Points at which a defining inequality fails; lhs < rhs - tolerance(rhs)
/// at the time it was recorded.
struct Witness {
  WitnessKind kind;
  double x1;
  double x2;
  double lhs;
  double rhs;
};

struct MembershipVerdict {
  MembershipStatus status = MembershipStatus::Unknown;
  VerdictMethod method = VerdictMethod::AnalyticRule;
  std::optional<Witness> witness;
  std::string rule_id;

  /// "certified" for an analytic In, "evidence" for a numeric In, "refuted"
  /// for Out and "undecided" otherwise.
  std::string_view label() const noexcept;
};

/// Log-spaced evaluation grid over (0, inf) for the numeric checks.
struct GridSpec {
  double lo = 1e-6;
  double hi = 1e6;
  std::size_t points = 1000;
  /// Non-adjacent pairs drawn for the midpoint-concavity scan.
  std::size_t random_pairs = 10000;
  std::uint64_t seed = 0x5D0;

  std::vector<double> nodes() const;
};

/// Violation threshold for the defining inequalities: 1e-9 * max(1, |g|).
double concavity_tolerance(double value) noexcept;

/// True when re-evaluating the witness' inequality on `d` still shows a
/// violation beyond concavity_tolerance.
bool witness_reproduces(const Distribution& d, const Witness& w);

/// Hard-coded rule table for the zoo families. Out rules fire for parameter
/// ranges with finite mean and carry a density-monotonicity witness.
/// Throws UnsupportedFamily for composites.
MembershipVerdict analytic_h_membership(const Distribution& d);

/// Grid evidence for membership in H: midpoint concavity of tail(1/x) over
/// adjacent triples and random pairs, plus monotonicity of x^2 pdf(x) when a
/// density exists. The first violation in grid order is reported.
MembershipVerdict numeric_h_check(const Distribution& d, const GridSpec& grid = {});

/// Scans tail(1/x1) + tail(1/x2) >= tail(1/(x1+x2)) over the grid square.
MembershipVerdict hstar_check(const Distribution& d, const GridSpec& grid = {});

/// Verdict inherited by a closure composite, Unknown if none was carried.
MembershipVerdict closure_verdict(const Distribution& d);

/// Analytic rule for zoo families, closure certificate for composites, and
/// numeric_h_check whenever those are silent.
MembershipVerdict h_membership(const Distribution& d, const GridSpec& grid = {});

// Closure constructors.

/// cdf = cdf(d)^beta, beta >= 1.
Distribution power_transform(const Distribution& d, double beta);

/// Strictly increasing map with phi(0) = 0 given through forward and inverse
/// evaluators. The derivative of the inverse is optional and enables pdf().
struct MonotoneMap {
  std::string name;
  ParamMap params;
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
  std::function<double(double)> inverse_derivative;
};

MonotoneMap identity_map();
/// phi(x) = x^p, p >= 1.
MonotoneMap power_map(double p);
/// phi(x) = e^x - 1.
MonotoneMap expm1_map();

/// Law of phi(X). Validates on the grid that phi(0) = 0, phi is strictly
/// increasing and midpoint convex, and x -> 1/phi^{-1}(1/x) is midpoint
/// concave; throws ConditionFailed naming the failed premise.
Distribution convex_transform(const Distribution& d, const MonotoneMap& phi,
                              const GridSpec& grid = {});

/// Law of max(X, Y) for independent X ~ d1, Y ~ d2.
Distribution max_of(const Distribution& d1, const Distribution& d2);

/// sum_i w_i F_i; weights nonnegative summing to 1 within 1e-12 (WeightError).
Distribution mixture(const std::vector<double>& weights, const std::vector<Distribution>& ds);

/// Law of max(X - c, 0), c > 0; carries an atom of mass cdf(d, c) at 0.
Distribution deductible(const Distribution& d, double c);

}  // namespace sdom
