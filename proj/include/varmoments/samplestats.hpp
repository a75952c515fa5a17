#pragma once

#include <cstddef>
#include <span>

namespace varmoments::samplestats {

/// s^4 computed two ways: directly as (s^2)^2 and through the five-term
/// distinct-index decomposition. The pair (bessel, ustat) carries the
/// U-statistic identity; (s4_direct, s4_decomposed) the regrouped one.
struct VarianceBreakdown {
  double bessel;
  double ustat;
  double s4_direct;
  double s4_decomposed;
};

/// Arithmetic mean, compensated. Requires n >= 1.
[[nodiscard]] double sample_mean(std::span<const double> x);

/// Bessel-corrected sample variance via the corrected two-pass algorithm
/// (mean first, then squared deviations with a mean-residual correction).
/// Requires n >= 2.
[[nodiscard]] double sample_variance(std::span<const double> x);

/// The same quantity as the average of the kernel (x_i - x_j)^2 / 2 over all
/// ordered distinct pairs, reduced to O(n): (p2 - p1^2/n) / (n-1).
/// Requires n >= 2. Agrees with sample_variance for well-conditioned input;
/// the raw-sum form is intentionally kept distinct so the identity is a
/// checkable equality, not a tautology.
[[nodiscard]] double sample_variance_ustat(std::span<const double> x);

/// Populates all four fields. Requires n >= 4.
[[nodiscard]] VarianceBreakdown variance_breakdown(std::span<const double> x);

}  // namespace varmoments::samplestats
