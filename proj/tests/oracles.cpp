#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracles {

NaivePowerSums naive_power_sums(std::span<const double> x) {
  NaivePowerSums ps{0, 0, 0, 0};
  for (double v : x) {
    ps.p1 += v;
    ps.p2 += v * v;
    ps.p3 += v * v * v;
    ps.p4 += v * v * v * v;
  }
  return ps;
}

double pair_loop_variance(std::span<const double> x) {
  const std::size_t n = x.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = x[i] - x[j];
      acc += d * d / 2.0;
    }
  }
  const double dn = static_cast<double>(n);
  return acc / (dn * (dn - 1.0));
}

double dcor_double_centering(std::span<const double> x,
                             std::span<const double> y) {
  const std::size_t n = x.size();
  const auto center = [n](std::span<const double> v) {
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i * n + j] = std::abs(v[i] - v[j]);
      }
    }
    std::vector<double> row(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) row[i] += d[i * n + j];
      grand += row[i];
    }
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i * n + j] += -row[i] / dn - row[j] / dn + grand / (dn * dn);
      }
    }
    return d;
  };
  const auto A = center(x);
  const auto B = center(y);
  double vxy = 0.0, vxx = 0.0, vyy = 0.0;
  for (std::size_t k = 0; k < n * n; ++k) {
    vxy += A[k] * B[k];
    vxx += A[k] * A[k];
    vyy += B[k] * B[k];
  }
  const double denom = std::sqrt(vxx * vyy);
  if (!(denom > 0.0)) return 0.0;
  return std::sqrt(std::max(0.0, vxy / denom));
}

double simpson(const std::function<double(double)>& f, double a, double b,
               std::size_t intervals) {
  if (intervals % 2 == 1) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < intervals; ++i) {
    const double xi = a + h * static_cast<double>(i);
    acc += f(xi) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

double exp_central_moment_quadrature(double rate, int k) {
  const double mean = 1.0 / rate;
  // e^{-rate x} below ~ 60/rate is 1e-26; the integrand is then negligible.
  const double upper = 60.0 / rate;
  return simpson(
      [rate, mean, k](double x) {
        return std::pow(x - mean, k) * rate * std::exp(-rate * x);
      },
      0.0, upper, 400000);
}

double uniform_central_moment_quadrature(double lo, double hi, int k) {
  const double mean = 0.5 * (lo + hi);
  const double density = 1.0 / (hi - lo);
  return simpson(
      [mean, density, k](double x) { return std::pow(x - mean, k) * density; },
      lo, hi, 200000);
}

double DiscreteLaw::moment(int k) const {
  double m = 0.0;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    m += probs[a] * std::pow(atoms[a], k);
  }
  return m;
}

double DiscreteLaw::central_moment(int k) const {
  const double mu = moment(1);
  double m = 0.0;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    m += probs[a] * std::pow(atoms[a] - mu, k);
  }
  return m;
}

namespace {

template <typename Fn>
void enumerate_tuples(const DiscreteLaw& law, std::size_t n, Fn&& fn) {
  const std::size_t k = law.atoms.size();
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n);
  while (true) {
    double p = 1.0;
    for (std::size_t t = 0; t < n; ++t) {
      x[t] = law.atoms[idx[t]];
      p *= law.probs[idx[t]];
    }
    fn(x, p);
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == k) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
}

struct MeanVar {
  double mean, s2;
};

MeanVar mean_var(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double m = 0.0;
  for (double v : x) m += v;
  m /= n;
  double q = 0.0;
  for (double v : x) q += (v - m) * (v - m);
  return MeanVar{m, q / (n - 1.0)};
}

}  // namespace

double enumerate_cov_mean_s2(const DiscreteLaw& law, std::size_t n) {
  double e_m = 0.0, e_s2 = 0.0, e_ms2 = 0.0;
  enumerate_tuples(law, n, [&](const std::vector<double>& x, double p) {
    const MeanVar mv = mean_var(x);
    e_m += p * mv.mean;
    e_s2 += p * mv.s2;
    e_ms2 += p * mv.mean * mv.s2;
  });
  return e_ms2 - e_m * e_s2;
}

EnumeratedMoments enumerate_s2_moments(const DiscreteLaw& law, std::size_t n) {
  double e_s2 = 0.0, e_s4 = 0.0;
  enumerate_tuples(law, n, [&](const std::vector<double>& x, double p) {
    const MeanVar mv = mean_var(x);
    e_s2 += p * mv.s2;
    e_s4 += p * mv.s2 * mv.s2;
  });
  return EnumeratedMoments{e_s2, e_s4, e_s4 - e_s2 * e_s2};
}

std::complex<double> exp_log_cf(double u) {
  return -std::log(std::complex<double>(1.0, -u));
}

std::complex<double> exp_log_cf_second_derivative(double u) {
  const std::complex<double> d(1.0, -u);
  return -1.0 / (d * d);
}

}  // namespace oracles
