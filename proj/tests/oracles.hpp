#pragma once

// Test-only oracles. Everything here recomputes spec'd quantities by an
// independent route (naive loops, explicit double centering, quadrature,
// exact enumeration) and must stay decoupled from the library paths it
// checks.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace oracles {

struct NaivePowerSums {
  double p1, p2, p3, p4;
};

/// Plain-loop power sums, no compensation.
NaivePowerSums naive_power_sums(std::span<const double> x);

/// (1/(n(n-1))) sum_{i != j} (x_i - x_j)^2 / 2 by explicit double loop.
double pair_loop_variance(std::span<const double> x);

/// Distance correlation by materialized distance matrices and literal
/// double centering. O(n^2) memory; small inputs only.
double dcor_double_centering(std::span<const double> x,
                             std::span<const double> y);

/// Composite Simpson on [a, b].
double simpson(const std::function<double(double)>& f, double a, double b,
               std::size_t intervals);

/// Central moment E[(X - mean)^k] of exponential(rate) by quadrature.
double exp_central_moment_quadrature(double rate, int k);

/// Central moment of uniform(lo, hi) by quadrature.
double uniform_central_moment_quadrature(double lo, double hi, int k);

/// A finite-support distribution for exact enumeration.
struct DiscreteLaw {
  std::vector<double> atoms;
  std::vector<double> probs;

  double moment(int k) const;          // E[X^k]
  double central_moment(int k) const;  // E[(X-mu)^k]
};

/// Exact Cov(sample mean, sample variance) for n i.i.d. draws of the law,
/// by enumeration of all |atoms|^n outcomes.
double enumerate_cov_mean_s2(const DiscreteLaw& law, std::size_t n);

/// Exact E[s^2], E[s^4] for n i.i.d. draws of the law, by enumeration.
struct EnumeratedMoments {
  double e_s2, e_s4, var_s2;
};
EnumeratedMoments enumerate_s2_moments(const DiscreteLaw& law, std::size_t n);

/// Log characteristic function of exponential(1): Psi(u) = -log(1 - iu),
/// and its exact second derivative -1/(1-iu)^2.
std::complex<double> exp_log_cf(double u);
std::complex<double> exp_log_cf_second_derivative(double u);

}  // namespace oracles
