#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace varmoments::symsum {

/// Power sums p_k = sum_i x_i^k, k = 1..4, accumulated with compensated
/// summation. The basis into which every distinct-index sum reduces.
struct PowerSums {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double p4 = 0.0;
  std::size_t n = 0;
};

/// The seven distinct-index symmetric means:
///
///   mu4_hat    = sum_i x_i^4 / n
///   mu31_hat   = sum_{i!=j} x_i^3 x_j / (n(n-1))
///   mu22_hat   = sum_{i!=j} x_i^2 x_j^2 / (n(n-1))
///   mu211_hat  = sum_{i!=j!=k} x_i^2 x_j x_k / (n(n-1)(n-2))
///   mu1111_hat = sum_{i!=j!=k!=l} x_i x_j x_k x_l / (n(n-1)(n-2)(n-3))
///   mu2_tilde  = sum_i x_i^2 / n
///   mu11_tilde = sum_{i!=j} x_i x_j / (n(n-1))
///
/// Index tuples are ordered and pairwise distinct; the divisor is the tuple
/// count (falling factorial).
struct SymmetricMoments {
  double mu4_hat = 0.0;
  double mu31_hat = 0.0;
  double mu22_hat = 0.0;
  double mu211_hat = 0.0;
  double mu1111_hat = 0.0;
  double mu2_tilde = 0.0;
  double mu11_tilde = 0.0;
  std::size_t n = 0;
};

/// Reduced variant for 2 <= n < 4: only the fields whose tuples need at
/// most two distinct indices are defined.
struct PairMoments {
  double mu31_hat = 0.0;
  double mu22_hat = 0.0;
  double mu2_tilde = 0.0;
  double mu11_tilde = 0.0;
  std::size_t n = 0;
};

/// Coefficients of the exact per-sample decomposition
///   s^4 = c4*mu4_hat + c31*mu31_hat + c22*mu22_hat
///       + c211*mu211_hat + c1111*mu1111_hat
/// (the same coefficients weight the expected symmetric moments in the
/// second moment of the sample variance). Requires n >= 2; the triple and
/// quadruple coefficients vanish for n < 4.
struct S4Coefficients {
  double c4;
  double c31;
  double c22;
  double c211;
  double c1111;
};
[[nodiscard]] S4Coefficients s4_coefficients(std::size_t n);

/// Compensated power sums of the sample. Throws std::domain_error on an
/// empty sample, std::invalid_argument on non-finite entries.
[[nodiscard]] PowerSums power_sums(std::span<const double> x);

/// All seven distinct-index means in O(n), by inclusion-exclusion over
/// coinciding indices:
///
///   S31   = p3 p1 - p4
///   S22   = p2^2 - p4
///   S211  = p2 p1^2 - p2^2 - 2 p3 p1 + 2 p4
///   S1111 = p1^4 - 6 p1^2 p2 + 3 p2^2 + 8 p1 p3 - 6 p4
///
/// each divided by its tuple count. Requires n >= 4 (throws
/// std::domain_error naming the first undefined field otherwise).
[[nodiscard]] SymmetricMoments symmetric_moments(std::span<const double> x);
[[nodiscard]] SymmetricMoments symmetric_moments(const PowerSums& ps);

/// Pair-index means only; defined for n >= 2.
[[nodiscard]] PairMoments pair_moments(std::span<const double> x);

/// Literal transcription of the distinct-index sums: explicit iteration over
/// all ordered tuples of pairwise-distinct indices. O(n^4); the ground-truth
/// oracle for symmetric_moments. Samples longer than `ceiling` are rejected
/// (std::invalid_argument) unless the caller raises it.
[[nodiscard]] SymmetricMoments brute_force_symmetric_moments(
    std::span<const double> x, std::size_t ceiling = 40);

/// Sample median (by copy + nth_element). Offered for conditioning
/// diagnostics: Eq-style distinct-index sums are not shift invariant, so
/// callers must recompute, never reuse, moments after centering.
[[nodiscard]] double sample_median(std::span<const double> x);

/// x - sample_median(x), for cancellation diagnostics only.
[[nodiscard]] std::vector<double> median_centered(std::span<const double> x);

}  // namespace varmoments::symsum
