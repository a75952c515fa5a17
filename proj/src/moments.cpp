#include "varmoments/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "varmoments/kahan.hpp"
#include "varmoments/symsum.hpp"

namespace varmoments::moments {

namespace {

double tol_scale(double a, double b) {
  return std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

void CrossMomentModel::validate() const {
  if (n < 2) throw std::domain_error("CrossMomentModel: n < 2");
  if (means.size() != n || second_moments.size() != n ||
      cross_moments.size() != n * n) {
    throw std::invalid_argument("CrossMomentModel: inconsistent field sizes");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (second_moments[i] < means[i] * means[i] -
                                1e-12 * tol_scale(second_moments[i], 0.0)) {
      throw std::invalid_argument(
          "CrossMomentModel: E[X_i^2] < E[X_i]^2 at i=" + std::to_string(i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = cross_at(i, j), b = cross_at(j, i);
      if (std::abs(a - b) > 1e-12 * tol_scale(a, b)) {
        throw std::invalid_argument(
            "CrossMomentModel: cross-moment matrix is not symmetric at (" +
            std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

IidMomentModel IidMomentModel::from_central(double mu1, double mu2c,
                                            double mu4c) {
  IidMomentModel m{mu1, mu2c + mu1 * mu1, mu2c, mu4c};
  m.validate();
  return m;
}

void IidMomentModel::validate() const {
  if (mu2c < 0.0 || mu4c < 0.0) {
    throw std::invalid_argument("IidMomentModel: negative central moment");
  }
  if (std::abs(mu2 - mu1 * mu1 - mu2c) > 1e-12 * tol_scale(mu2, mu2c)) {
    throw std::invalid_argument("IidMomentModel: mu2 - mu1^2 != mu2c");
  }
  if (mu4c < mu2c * mu2c * (1.0 - 1e-12)) {
    throw std::invalid_argument("IidMomentModel: mu4c < mu2c^2 violates Jensen");
  }
}

void Ar1Spec::validate() const {
  if (!(sigma2 > 0.0)) throw std::domain_error("Ar1Spec: sigma2 <= 0");
  if (!(std::abs(rho) < 1.0)) throw std::domain_error("Ar1Spec: |rho| >= 1");
  if (n < 2) throw std::domain_error("Ar1Spec: n < 2");
}

double expected_s2_general(const CrossMomentModel& m) {
  m.validate();
  StableSum diag;
  for (std::size_t i = 0; i < m.n; ++i) diag.add(m.second_moments[i]);
  StableSum off;
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      if (i != j) off.add(m.cross_at(i, j));
    }
  }
  const double dn = static_cast<double>(m.n);
  return diag.value() / dn - off.value() / (dn * (dn - 1.0));
}

BiasDecomposition bias_decomposition(const CrossMomentModel& m) {
  m.validate();
  const double dn = static_cast<double>(m.n);
  const double d2 = dn * (dn - 1.0);
  StableSum diag, prod, cov;
  for (std::size_t i = 0; i < m.n; ++i) diag.add(m.second_moments[i]);
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      if (i == j) continue;
      const double mm = m.means[i] * m.means[j];
      prod.add(mm);
      cov.add(m.cross_at(i, j) - mm);
    }
  }
  return BiasDecomposition{diag.value() / dn, prod.value() / d2,
                           cov.value() / d2};
}

double expected_s2_ar1(const Ar1Spec& a) {
  a.validate();
  const double rho = a.rho;
  const double dn = static_cast<double>(a.n);
  const double gamma0 = a.marginal_variance();
  if (rho == 0.0) return a.sigma2;
  const double omr = 1.0 - rho;
  const double bias = 2.0 * rho / (omr * (dn - 1.0)) -
                      2.0 * rho * (1.0 - std::pow(rho, dn)) /
                          (dn * (dn - 1.0) * omr * omr);
  return gamma0 * (1.0 - bias);
}

CrossMomentModel ar1_cross_moments(const Ar1Spec& a) {
  a.validate();
  const double gamma0 = a.marginal_variance();
  CrossMomentModel m;
  m.n = a.n;
  m.means.assign(a.n, 0.0);
  m.second_moments.assign(a.n, gamma0);
  m.cross_moments.assign(a.n * a.n, 0.0);
  for (std::size_t i = 0; i < a.n; ++i) {
    for (std::size_t j = 0; j < a.n; ++j) {
      const auto lag = i > j ? i - j : j - i;
      m.cross_moments[i * a.n + j] =
          gamma0 * std::pow(a.rho, static_cast<double>(lag));
    }
  }
  return m;
}

double expected_s4(const ExpectedSymmetricMoments& esm) {
  if (esm.n < 4) throw std::domain_error("expected_s4: n < 4");
  const symsum::S4Coefficients c = symsum::s4_coefficients(esm.n);
  return c.c4 * esm.e_mu4 + c.c31 * esm.e_mu31 + c.c22 * esm.e_mu22 +
         c.c211 * esm.e_mu211 + c.c1111 * esm.e_mu1111;
}

double var_s2_general(const ExpectedSymmetricMoments& esm) {
  const double es4 = expected_s4(esm);
  return es4 - esm.e_mu2_tilde * esm.e_mu2_tilde +
         2.0 * esm.e_mu11_tilde * esm.e_mu2_tilde -
         esm.e_mu11_tilde * esm.e_mu11_tilde;
}

double var_s2_iid(const IidMomentModel& m, std::size_t n) {
  m.validate();
  if (n < 2) throw std::domain_error("var_s2_iid: n < 2");
  const double dn = static_cast<double>(n);
  return m.mu4c / dn - (dn - 3.0) * m.mu2c * m.mu2c / (dn * (dn - 1.0));
}

double var_s2_normal(double sigma2, std::size_t n) {
  if (!(sigma2 > 0.0)) throw std::domain_error("var_s2_normal: sigma2 <= 0");
  if (n < 2) throw std::domain_error("var_s2_normal: n < 2");
  return 2.0 * sigma2 * sigma2 / (static_cast<double>(n) - 1.0);
}

double geometric_weighted_sum(double rho, std::size_t n) {
  StableSum s;
  double power = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    power *= rho;
    s.add(static_cast<double>(n - i) * power);
  }
  return s.value();
}

double geometric_weighted_sum_closed(double rho, std::size_t n) {
  if (rho == 0.0) return 0.0;
  const double dn = static_cast<double>(n);
  const double omr = 1.0 - rho;
  return rho * (dn * omr - (1.0 - std::pow(rho, dn))) / (omr * omr);
}

}  // namespace varmoments::moments
