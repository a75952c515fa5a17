#include "varmoments/symsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail.hpp"
#include "varmoments/kahan.hpp"

namespace varmoments::symsum {

namespace {

double falling(std::size_t n, int k) {
  double f = 1.0;
  for (int i = 0; i < k; ++i) f *= static_cast<double>(n - i);
  return f;
}

}  // namespace

S4Coefficients s4_coefficients(std::size_t n) {
  if (n < 2) throw std::domain_error("s4_coefficients: n < 2");
  const double dn = static_cast<double>(n);
  const double d2 = dn * (dn - 1.0);
  return S4Coefficients{
      1.0 / dn,
      -4.0 / dn,
      (dn * dn - 2.0 * dn + 3.0) / d2,
      -2.0 * (dn - 2.0) * (dn - 3.0) / d2,
      (dn - 2.0) * (dn - 3.0) / d2,
  };
}

PowerSums power_sums(std::span<const double> x) {
  detail::require_sample(x, 1, "power_sums");
  StableSum s1, s2, s3, s4;
  for (double v : x) {
    const double v2 = v * v;
    s1.add(v);
    s2.add(v2);
    s3.add(v2 * v);
    s4.add(v2 * v2);
  }
  return PowerSums{s1.value(), s2.value(), s3.value(), s4.value(), x.size()};
}

SymmetricMoments symmetric_moments(const PowerSums& ps) {
  if (ps.n < 2) {
    throw std::domain_error("symmetric_moments: n < 2, no pair sums defined");
  }
  if (ps.n < 3) {
    throw std::domain_error(
        "symmetric_moments: n < 3, mu211_hat undefined (needs three distinct "
        "indices); use pair_moments");
  }
  if (ps.n < 4) {
    throw std::domain_error(
        "symmetric_moments: n < 4, mu1111_hat undefined (needs four distinct "
        "indices); use pair_moments");
  }
  const double p1 = ps.p1, p2 = ps.p2, p3 = ps.p3, p4 = ps.p4;
  const double s31 = p3 * p1 - p4;
  const double s22 = p2 * p2 - p4;
  const double s211 = p2 * p1 * p1 - p2 * p2 - 2.0 * p3 * p1 + 2.0 * p4;
  const double s1111 = p1 * p1 * p1 * p1 - 6.0 * p1 * p1 * p2 +
                       3.0 * p2 * p2 + 8.0 * p1 * p3 - 6.0 * p4;
  const double dn = static_cast<double>(ps.n);
  const double d2 = falling(ps.n, 2);
  const double d3 = falling(ps.n, 3);
  const double d4 = falling(ps.n, 4);
  return SymmetricMoments{p4 / dn,   s31 / d2,  s22 / d2, s211 / d3,
                          s1111 / d4, p2 / dn,  (p1 * p1 - p2) / d2,
                          ps.n};
}

SymmetricMoments symmetric_moments(std::span<const double> x) {
  return symmetric_moments(power_sums(x));
}

PairMoments pair_moments(std::span<const double> x) {
  detail::require_sample(x, 2, "pair_moments");
  const PowerSums ps = power_sums(x);
  const double d2 = falling(ps.n, 2);
  return PairMoments{(ps.p3 * ps.p1 - ps.p4) / d2,
                     (ps.p2 * ps.p2 - ps.p4) / d2, ps.p2 / static_cast<double>(ps.n),
                     (ps.p1 * ps.p1 - ps.p2) / d2, ps.n};
}

SymmetricMoments brute_force_symmetric_moments(std::span<const double> x,
                                               std::size_t ceiling) {
  detail::require_sample(x, 4, "brute_force_symmetric_moments");
  const std::size_t n = x.size();
  if (n > ceiling) {
    throw std::invalid_argument(
        "brute_force_symmetric_moments: n exceeds the O(n^4) ceiling of " +
        std::to_string(ceiling) + "; raise it explicitly if intended");
  }
  StableSum a4, a31, a22, a211, a1111, a2, a11;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    a4.add(xi * xi * xi * xi);
    a2.add(xi * xi);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double xj = x[j];
      a31.add(xi * xi * xi * xj);
      a22.add(xi * xi * xj * xj);
      a11.add(xi * xj);
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double xk = x[k];
        a211.add(xi * xi * xj * xk);
        for (std::size_t l = 0; l < n; ++l) {
          if (l == i || l == j || l == k) continue;
          a1111.add(xi * xj * xk * x[l]);
        }
      }
    }
  }
  const double dn = static_cast<double>(n);
  return SymmetricMoments{a4.value() / dn,
                          a31.value() / falling(n, 2),
                          a22.value() / falling(n, 2),
                          a211.value() / falling(n, 3),
                          a1111.value() / falling(n, 4),
                          a2.value() / dn,
                          a11.value() / falling(n, 2),
                          n};
}

double sample_median(std::span<const double> x) {
  detail::require_sample(x, 1, "sample_median");
  std::vector<double> v(x.begin(), x.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid),
                   v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double hi = v[mid];
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid) - 1,
                   v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (v[mid - 1] + hi);
}

std::vector<double> median_centered(std::span<const double> x) {
  const double med = sample_median(x);
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v -= med;
  return out;
}

}  // namespace varmoments::symsum
