#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "varmoments/stochastic.hpp"

namespace varmoments::diagnostics {

/// Dependence measures between the (sample mean, sample variance) replicate
/// columns. dcor is the distance correlation of the pairs; cov_mean_s2 the
/// sample covariance with a plug-in standard error.
struct DependenceSummary {
  double pearson = 0.0;
  double dcor = 0.0;
  double cov_mean_s2 = 0.0;
  double se_cov = 0.0;
  /// Set when a column is constant and the dcor normalization degenerates.
  bool degenerate = false;
};

/// Requires at least 100 pairs (std::domain_error below that).
[[nodiscard]] DependenceSummary dependence_summary(
    std::span<const std::pair<double, double>> pairs);

/// Distance correlation of two columns (biased V-statistic version, the
/// standard pairwise-distance double-centering definition). Computed in
/// O(n log n) by an x-sorted sweep with Fenwick trees over y ranks.
[[nodiscard]] double distance_correlation(std::span<const double> x,
                                          std::span<const double> y);

/// Null quantiles of dcor under random re-pairing of the columns:
/// `permutations` shuffles of y against x, each from its own sub-seed.
struct PermutationBand {
  double q95 = 0.0;
  double q99 = 0.0;
  std::size_t permutations = 0;
};
[[nodiscard]] PermutationBand dcor_permutation_band(
    std::span<const std::pair<double, double>> pairs, std::size_t permutations,
    std::uint64_t seed, unsigned threads = 0);

/// Empirical log characteristic function on a symmetric u grid and its
/// centered second differences. psi is log phi-hat with the principal branch
/// tracked continuously from u = 0 outward; curvature rows at the two grid
/// endpoints are NaN. se_curv_* are delta-method standard errors of the
/// curvature (influence function of the second difference of log phi-hat).
struct EcfCurve {
  std::vector<double> u_grid;
  std::vector<double> psi_re;
  std::vector<double> psi_im;
  std::vector<double> curv_re;
  std::vector<double> curv_im;
  std::vector<double> se_curv_re;
  std::vector<double> se_curv_im;
  double sigma2_hat = 0.0;
  double min_abs_phi = 0.0;
};

/// Requires |x| >= 1000, a symmetric uniformly spaced grid containing 0 with
/// spacing h in (0, 0.1], and max|u| <= 2/stddev(x). Throws std::range_error
/// if |phi-hat| drops below `phi_floor` anywhere on the grid.
[[nodiscard]] EcfCurve ecf_curvature(std::span<const double> x,
                                     std::span<const double> u_grid,
                                     double phi_floor = 0.1);

/// Symmetric grid {-u_max, ..., -h, 0, h, ..., u_max}.
[[nodiscard]] std::vector<double> symmetric_grid(double u_max, double h);

struct IndependenceOptions {
  std::size_t n = 10;
  std::size_t r = 10000;
  std::size_t m = 100000;
  std::uint64_t seed = 42;
  double u_max = 1.0;
  double h = 0.05;
  std::size_t permutations = 199;
  /// Curvature budget for the "quadratic log-CF" call.
  double ecf_budget = 0.05;
  unsigned threads = 0;
};

/// Combined verdict record: replication-level dependence measures plus the
/// log-CF curvature check on one large i.i.d. sample. Statistics against
/// configured thresholds, no hypothesis-test claim. Takes a DistributionSpec
/// by construction: the curvature condition characterizes i.i.d. parents, so
/// AR(1) input is rejected at the type level.
struct IndependenceReport {
  std::size_t n = 0, r = 0, m = 0;
  std::uint64_t seed = 0;
  DependenceSummary dependence;
  PermutationBand band;
  double max_curvature_deviation = 0.0;  // max over grid of |curv + sigma2_hat|
  double sigma2_hat = 0.0;
  double ecf_budget = 0.0;
  bool cov_within_3se = false;
  bool dcor_inside_95 = false;
  bool dcor_above_99 = false;
  bool ecf_quadratic = false;
  std::string verdict;      // "consistent with independence" | "dependence detected"
  std::string ecf_verdict;  // quadratic vs non-quadratic log-CF
  EcfCurve curve;
};

[[nodiscard]] IndependenceReport normality_independence_report(
    const stochastic::DistributionSpec& d, const IndependenceOptions& o);

}  // namespace varmoments::diagnostics
