#pragma once

#include <cstddef>
#include <vector>

namespace varmoments::moments {

/// Population moment specification for a not-necessarily-i.i.d. sample of
/// length n: E[X_i], E[X_i^2] and the cross moments E[X_i X_j] for i != j
/// (row-major n x n, diagonal ignored, must be symmetric).
struct CrossMomentModel {
  std::vector<double> means;
  std::vector<double> second_moments;
  std::vector<double> cross_moments;  // n*n row-major
  std::size_t n = 0;

  [[nodiscard]] double cross_at(std::size_t i, std::size_t j) const {
    return cross_moments[i * n + j];
  }
  /// Throws std::domain_error (n < 2) or std::invalid_argument (bad sizes,
  /// asymmetric cross matrix, E[X^2] < E[X]^2).
  void validate() const;
};

/// i.i.d. population moments: raw mu1 = E[X], mu2 = E[X^2] and central
/// mu2c, mu4c. Kept redundant on purpose so mu2 - mu1^2 == mu2c is a
/// checkable invariant.
struct IidMomentModel {
  double mu1;
  double mu2;
  double mu2c;
  double mu4c;

  [[nodiscard]] static IidMomentModel from_central(double mu1, double mu2c,
                                                   double mu4c);
  void validate() const;
};

/// Stationary AR(1): X_t = rho X_{t-1} + eps_t with innovation variance
/// sigma2, so the marginal variance is sigma2 / (1 - rho^2).
struct Ar1Spec {
  double sigma2;
  double rho;
  std::size_t n;

  void validate() const;
  [[nodiscard]] double marginal_variance() const {
    return sigma2 / (1.0 - rho * rho);
  }
};

/// Expectations of the seven distinct-index symmetric means, either supplied
/// by a model or plugged in from Monte Carlo averages.
struct ExpectedSymmetricMoments {
  double e_mu4 = 0.0;
  double e_mu31 = 0.0;
  double e_mu22 = 0.0;
  double e_mu211 = 0.0;
  double e_mu1111 = 0.0;
  double e_mu2_tilde = 0.0;
  double e_mu11_tilde = 0.0;
  std::size_t n = 0;
};

/// E[s^2] = sum_i E[X_i^2]/n - sum_{i!=j} E[X_i X_j]/(n(n-1)).
[[nodiscard]] double expected_s2_general(const CrossMomentModel& m);

/// The three pieces of the dependence-aware rewrite of E[s^2]:
///   second_moment_term  = sum_i E[X_i^2] / n
///   mean_product_term   = sum_{i!=j} E[X_i]E[X_j] / (n(n-1))
///   covariance_term     = sum_{i!=j} (E[X_i X_j] - E[X_i]E[X_j]) / (n(n-1))
/// with E[s^2] = second_moment_term - mean_product_term - covariance_term.
struct BiasDecomposition {
  double second_moment_term;
  double mean_product_term;
  double covariance_term;

  [[nodiscard]] double combined() const {
    return second_moment_term - mean_product_term - covariance_term;
  }
};
[[nodiscard]] BiasDecomposition bias_decomposition(const CrossMomentModel& m);

/// Closed-form E[s^2] for a stationary AR(1) sample:
///
///   (sigma2/(1-rho^2)) * (1 - 2 rho / ((1-rho)(n-1))
///                           + 2 rho (1-rho^n) / (n(n-1)(1-rho)^2))
///
/// (final denominator (1-rho)^2: the form consistent with the geometric
/// identity and with the explicit cross-moment matrix sum).
[[nodiscard]] double expected_s2_ar1(const Ar1Spec& a);

/// The explicit AR(1) cross-moment model: E[X_i X_j] = gamma0 rho^|i-j|,
/// zero means. Feeding it to expected_s2_general gives the independent
/// summation route for expected_s2_ar1.
[[nodiscard]] CrossMomentModel ar1_cross_moments(const Ar1Spec& a);

/// E[s^4] from the expected symmetric moments (five-coefficient form).
/// Requires n >= 4.
[[nodiscard]] double expected_s4(const ExpectedSymmetricMoments& esm);

/// Var[s^2] = E[s^4] - (E[mu2_tilde])^2 + 2 E[mu11_tilde] E[mu2_tilde]
///          - (E[mu11_tilde])^2, grouped exactly that way. Requires n >= 4.
[[nodiscard]] double var_s2_general(const ExpectedSymmetricMoments& esm);

/// Var[s^2] for an i.i.d. sample: mu4c/n - (n-3) mu2c^2 / (n(n-1)).
/// Uses central moments, so it applies to arbitrary-mean i.i.d. models
/// (s^2 is shift invariant even though the derivation centers the sample).
/// Requires n >= 2.
[[nodiscard]] double var_s2_iid(const IidMomentModel& m, std::size_t n);

/// Var[s^2] = 2 sigma2^2 / (n-1) for an i.i.d. normal sample.
[[nodiscard]] double var_s2_normal(double sigma2, std::size_t n);

/// sum_{i=1..n} (n-i) rho^i, summed term by term.
[[nodiscard]] double geometric_weighted_sum(double rho, std::size_t n);

/// The same sum in closed form: rho (n(1-rho) - (1-rho^n)) / (1-rho)^2,
/// with rho == 0 short-circuited to 0.
[[nodiscard]] double geometric_weighted_sum_closed(double rho, std::size_t n);

}  // namespace varmoments::moments
