#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdom/distribution.hpp"
#include "sdom/majorization.hpp"
#include "sdom/quadrature.hpp"
#include "sdom/rng.hpp"

namespace sdom {

enum class DominanceVerdict { ConsistentWithSD, ViolationFound, Inconclusive };

std::string_view to_string(DominanceVerdict v) noexcept;

struct GapPoint {
  double x;
  double gap;
};

/// Comparison of the eta-portfolio against the theta-portfolio. The property
/// holds when F_eta(x) >= F_theta(x) everywhere, so negative gaps are
/// evidence against it.
struct DominanceReport {
  std::vector<double> grid;     // union of both samples, sorted, distinct
  std::vector<double> f_eta;    // ECDF of the eta-portfolio on grid
  std::vector<double> f_theta;  // ECDF of the theta-portfolio on grid
  std::vector<double> gap;      // f_eta - f_theta
  std::size_t n = 0;            // sample size per portfolio
  double delta = 0.0;
  double dkw_eps = 0.0;         // one-sample radius
  double band = 0.0;            // two-sample band, 2 * dkw_eps
  DominanceVerdict verdict = DominanceVerdict::Inconclusive;
  std::size_t violation_count = 0;
  /// Most negative gap, present when verdict is ViolationFound.
  std::optional<GapPoint> max_violation;
  GapPoint min_gap{0.0, 0.0};
};

/// Builds the report from two samples of equal size. NaN in either sample
/// gives Inconclusive.
DominanceReport compare_samples(std::vector<double> eta_sample, std::vector<double> theta_sample,
                                double delta);

/// One draw of the per-component law.
using Sampler = std::function<double(RngStream&)>;

/// Simulates sum eta_i X_i and sum theta_i X_i with X_i iid from the sampler.
/// Each portfolio and each component has its own stream forked from rng.
/// Requires theta majorized by eta (NotMajorized), n >= 1000 and delta in
/// (0,1) (DomainError).
DominanceReport mc_dominance_test(const Sampler& draw, const WeightVector& theta,
                                  const WeightVector& eta, std::size_t n, double delta,
                                  RngStream& rng);
DominanceReport mc_dominance_test(const Distribution& d, const WeightVector& theta,
                                  const WeightVector& eta, std::size_t n, double delta,
                                  RngStream& rng);

/// Compares (sum theta_i) X_1 against sum theta_i X_i.
DominanceReport sd_star_test(const Sampler& draw, const WeightVector& theta, std::size_t n,
                             double delta, RngStream& rng);
DominanceReport sd_star_test(const Distribution& d, const WeightVector& theta, std::size_t n,
                             double delta, RngStream& rng);

struct ExactTail {
  double value;
  double error_estimate;
  std::size_t evaluations;
};

/// P(a X_1 + (1-a) X_2 > x) for iid X_i ~ d on [0, inf), as
///   tail(x)^2 + int_0^{F(x)} tail((x - a Q(p)) / (1-a)) dp
///             + int_0^{F(x)} tail((x - (1-a) Q(p)) / a) dp.
/// An atom at the lower support point is integrated in closed form.
/// Throws DomainError for a outside (0,1), x < 0 or d with negative support,
/// QuadratureFailure when the tolerance cannot be met.
ExactTail exact_two_weight_tail_detail(const Distribution& d, double a, double x,
                                       const QuadratureSpec& quad = {});
double exact_two_weight_tail(const Distribution& d, double a, double x,
                             const QuadratureSpec& quad = {});

struct SuffScanGrid {
  std::vector<double> ys{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  std::vector<double> zs;       // empty: 25 log-spaced points over [1e-3, 1e3]
  std::vector<double> weights;  // empty: 0.05, 0.10, ..., 0.50
  double rel_tol = 1e-12;
};

struct SuffViolation {
  double y;
  double z;
  double theta;
  double eta;
  double lhs;
  double rhs;
};

/// Scans tail(y + z/(1-t)) + tail(y + z/t) over the grid for 0 < eta <= theta
/// <= 1/2 and reports cells where the theta side falls below the eta side by
/// more than rel_tol * max(1, rhs).
std::vector<SuffViolation> suff_condition_scan(const Distribution& d, const SuffScanGrid& grid = {});

struct FigureTable {
  std::vector<double> x;
  std::vector<double> f1;
  std::vector<double> f2;
  std::size_t n = 0;
};

/// Y1 = a1|X1| + a2|X2| and Y2 = b1|X1| + b2|X2| for X1, X2 iid
/// S_alpha(1, beta, 0) drawn from streams fork(1) and fork(2) of
/// RngStream(seed). Rows are the distinct values of Y1 and Y2 in order.
FigureTable figure_data(double alpha, double beta, const std::vector<double>& weights,
                        std::size_t n, std::uint64_t seed);

/// JSON summary of a report. The gap profile is thinned to at most
/// profile_points rows below the clip quantile of the grid.
std::string report_json(const DominanceReport& r, double clip_quantile = 0.9999,
                        std::size_t profile_points = 200);

}  // namespace sdom
