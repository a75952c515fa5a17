#include "varmoments/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "varmoments/kahan.hpp"
#include "varmoments/moments.hpp"
#include "varmoments/samplestats.hpp"
#include "varmoments/stochastic.hpp"
#include "varmoments/symsum.hpp"

namespace varmoments::verify {

namespace {

/// Relative residual with a scale floor: distinct-index sums of degree d can
/// legitimately cancel to ~0 while their terms sit at (rms)^d, so the floor
/// keeps the comparison conditioned at every sample scale.
double residual(double a, double b, double floor_scale) {
  const double denom = std::max({std::abs(a), std::abs(b), floor_scale, 1e-300});
  return std::abs(a - b) / denom;
}

std::vector<double> random_sample(stochastic::Rng& rng, std::size_t n,
                                  double scale) {
  std::vector<double> x(n);
  for (double& v : x) v = scale * rng.normal();
  return x;
}

double pair_loop_variance(const std::vector<double>& x) {
  StableSum acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i == j) continue;
      const double d = x[i] - x[j];
      acc.add(d * d / 2.0);
    }
  }
  const double n = static_cast<double>(x.size());
  return acc.value() / (n * (n - 1.0));
}

struct FieldCheck {
  const char* name;
  double fast;
  double brute;
  int degree;
};

}  // namespace

VerifyReport run_verification(const VerifyOptions& o) {
  if (o.max_n < 4 || o.max_n > 14) {
    throw std::domain_error("run_verification: max_n must lie in [4, 14]");
  }
  VerifyReport report;
  stochastic::Rng rng(stochastic::splitmix64(o.seed ^ 0x5eedULL));

  // 1. symmetric_moments vs brute force, mixed scales.
  {
    PropertyResult pr{"symsum_oracle_equivalence", true, 0.0, ""};
    for (std::size_t c = 0; c < o.cases; ++c) {
      const std::size_t n = 4 + c % (o.max_n - 3);
      const double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));
      const auto x = random_sample(rng, n, scale);
      const auto fast = symsum::symmetric_moments(x);
      const auto brute = symsum::brute_force_symmetric_moments(x);
      const auto ps = symsum::power_sums(x);
      const double msq = ps.p2 / static_cast<double>(n);
      const double f2 = msq, f4 = msq * msq;
      const FieldCheck checks[] = {
          {"mu4_hat", fast.mu4_hat, brute.mu4_hat, 4},
          {"mu31_hat", fast.mu31_hat, brute.mu31_hat, 4},
          {"mu22_hat", fast.mu22_hat, brute.mu22_hat, 4},
          {"mu211_hat", fast.mu211_hat, brute.mu211_hat, 4},
          {"mu1111_hat", fast.mu1111_hat, brute.mu1111_hat, 4},
          {"mu2_tilde", fast.mu2_tilde, brute.mu2_tilde, 2},
          {"mu11_tilde", fast.mu11_tilde, brute.mu11_tilde, 2},
      };
      for (const auto& ck : checks) {
        const double res = residual(ck.fast, ck.brute, ck.degree == 4 ? f4 : f2);
        if (res > pr.worst_residual) pr.worst_residual = res;
        if (res > 1e-10) {
          pr.pass = false;
          pr.detail = std::string("field ") + ck.name;
        }
      }
    }
    report.properties.push_back(pr);
  }

  // 2. Pair-kernel identity for s^2 (definitional == U-statistic == pair loop).
  {
    PropertyResult pr{"s2_pair_kernel_identity", true, 0.0, ""};
    for (std::size_t c = 0; c < o.cases; ++c) {
      const std::size_t n = 2 + c % (o.max_n - 1);
      const auto x = random_sample(rng, n, std::pow(10.0, rng.uniform(-2.0, 2.0)));
      const double bessel = samplestats::sample_variance(x);
      const double ustat = samplestats::sample_variance_ustat(x);
      const double loops = pair_loop_variance(x);
      const double res = std::max(residual(bessel, ustat, 0.0),
                                  residual(bessel, loops, 0.0));
      pr.worst_residual = std::max(pr.worst_residual, res);
      if (res > 1e-12) pr.pass = false;
    }
    report.properties.push_back(pr);
  }

  // 3. Five-term s^4 regrouping (optionally with the injected defect).
  {
    PropertyResult pr{"s4_decomposition_identity", true, 0.0, ""};
    for (std::size_t c = 0; c < o.cases; ++c) {
      const std::size_t n = 4 + c % (o.max_n - 3);
      const auto x = random_sample(rng, n, std::pow(10.0, rng.uniform(-2.0, 2.0)));
      const auto sm = symsum::symmetric_moments(x);
      auto coef = symsum::s4_coefficients(n);
      if (o.inject_defect) coef.c22 *= 1.0 + 1e-6;
      const double decomposed = coef.c4 * sm.mu4_hat + coef.c31 * sm.mu31_hat +
                                coef.c22 * sm.mu22_hat +
                                coef.c211 * sm.mu211_hat +
                                coef.c1111 * sm.mu1111_hat;
      const double s2 = samplestats::sample_variance(x);
      const double res = residual(s2 * s2, decomposed, 0.0);
      pr.worst_residual = std::max(pr.worst_residual, res);
      if (res > 1e-9) {
        pr.pass = false;
        pr.detail = o.inject_defect ? "defect injected" : "";
      }
    }
    report.properties.push_back(pr);
  }

  // 4. Reduction chain: general -> iid -> normal.
  {
    PropertyResult pr{"moment_reduction_chain", true, 0.0, ""};
    const double grid_mu1[] = {0.0, -1.5, 2.0};
    const double grid_var[] = {0.25, 1.0, 4.0};
    for (double mu1 : grid_mu1) {
      for (double var : grid_var) {
        for (std::size_t n : {2ul, 3ul, 5ul, 10ul, 50ul}) {
          // E[s^2] on an i.i.d.-filled cross-moment model equals mu2 - mu1^2.
          moments::CrossMomentModel m;
          m.n = n;
          m.means.assign(n, mu1);
          m.second_moments.assign(n, var + mu1 * mu1);
          m.cross_moments.assign(n * n, mu1 * mu1);
          const double res1 =
              residual(moments::expected_s2_general(m), var, 0.0);
          pr.worst_residual = std::max(pr.worst_residual, res1);
          if (res1 > 1e-12) pr.pass = false;
          // Normal: Eq-(9) route equals the 2 sigma^4/(n-1) closed form.
          const auto normal_model =
              moments::IidMomentModel::from_central(mu1, var, 3.0 * var * var);
          const double res2 = residual(moments::var_s2_iid(normal_model, n),
                                       moments::var_s2_normal(var, n), 0.0);
          pr.worst_residual = std::max(pr.worst_residual, res2);
          if (res2 > 1e-12) pr.pass = false;
          if (n >= 4) {
            // Zero-mean i.i.d. expected symmetric moments reduce Var[s^2]
            // to the i.i.d. formula.
            moments::ExpectedSymmetricMoments esm;
            esm.n = n;
            esm.e_mu4 = 3.0 * var * var;  // normal parent
            esm.e_mu22 = var * var;
            esm.e_mu2_tilde = var;
            const auto model = moments::IidMomentModel::from_central(
                0.0, var, 3.0 * var * var);
            const double res3 = residual(moments::var_s2_general(esm),
                                         moments::var_s2_iid(model, n), 0.0);
            pr.worst_residual = std::max(pr.worst_residual, res3);
            if (res3 > 1e-12) pr.pass = false;
          }
        }
      }
    }
    report.properties.push_back(pr);
  }

  // 5. AR(1): closed form == explicit cross-moment matrix sum.
  {
    PropertyResult pr{"ar1_matrix_route", true, 0.0, ""};
    for (double rho : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
      for (std::size_t n : {2ul, 3ul, 5ul, 10ul, 50ul}) {
        const moments::Ar1Spec spec{1.3, rho, n};
        const double closed = moments::expected_s2_ar1(spec);
        const double matrix =
            moments::expected_s2_general(moments::ar1_cross_moments(spec));
        const double res = residual(closed, matrix, 0.0);
        pr.worst_residual = std::max(pr.worst_residual, res);
        if (res > 1e-12) pr.pass = false;
      }
    }
    report.properties.push_back(pr);
  }

  // 6. Weighted geometric-sum identity.
  {
    PropertyResult pr{"geometric_sum_identity", true, 0.0, ""};
    for (double rho : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
      for (std::size_t n : {2ul, 3ul, 5ul, 10ul, 50ul}) {
        const double direct = moments::geometric_weighted_sum(rho, n);
        const double closed = moments::geometric_weighted_sum_closed(rho, n);
        const double res = residual(direct, closed, 0.0);
        pr.worst_residual = std::max(pr.worst_residual, res);
        if (res > 1e-12) pr.pass = false;
      }
    }
    report.properties.push_back(pr);
  }

  report.all_pass = std::all_of(report.properties.begin(),
                                report.properties.end(),
                                [](const PropertyResult& p) { return p.pass; });
  return report;
}

}  // namespace varmoments::verify
