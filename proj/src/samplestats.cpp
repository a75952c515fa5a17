#include "varmoments/samplestats.hpp"

#include <stdexcept>

#include "detail.hpp"
#include "varmoments/kahan.hpp"
#include "varmoments/symsum.hpp"

namespace varmoments::samplestats {

double sample_mean(std::span<const double> x) {
  detail::require_sample(x, 1, "sample_mean");
  StableSum s;
  for (double v : x) s.add(v);
  return s.value() / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  detail::require_sample(x, 2, "sample_variance");
  const double m = sample_mean(x);
  // Corrected two-pass: the (sum of residuals)^2/n term removes the bias a
  // rounded mean leaves in the squared deviations.
  StableSum sq, lin;
  for (double v : x) {
    const double d = v - m;
    sq.add(d * d);
    lin.add(d);
  }
  const double n = static_cast<double>(x.size());
  const double corr = lin.value();
  return (sq.value() - corr * corr / n) / (n - 1.0);
}

double sample_variance_ustat(std::span<const double> x) {
  detail::require_sample(x, 2, "sample_variance_ustat");
  const symsum::PowerSums ps = symsum::power_sums(x);
  const double n = static_cast<double>(ps.n);
  return (ps.p2 - ps.p1 * ps.p1 / n) / (n - 1.0);
}

VarianceBreakdown variance_breakdown(std::span<const double> x) {
  detail::require_sample(x, 4, "variance_breakdown");
  const double bessel = sample_variance(x);
  const double ustat = sample_variance_ustat(x);
  const symsum::SymmetricMoments sm = symsum::symmetric_moments(x);
  const symsum::S4Coefficients c = symsum::s4_coefficients(x.size());
  const double decomposed = c.c4 * sm.mu4_hat + c.c31 * sm.mu31_hat +
                            c.c22 * sm.mu22_hat + c.c211 * sm.mu211_hat +
                            c.c1111 * sm.mu1111_hat;
  return VarianceBreakdown{bessel, ustat, bessel * bessel, decomposed};
}

}  // namespace varmoments::samplestats
