#include "varmoments/stochastic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "detail.hpp"
#include "varmoments/kahan.hpp"
#include "varmoments/samplestats.hpp"
#include "varmoments/symsum.hpp"

namespace varmoments::stochastic {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master, SeedDomain domain,
                          std::uint64_t index) {
  const std::uint64_t base =
      splitmix64(master ^ (0xD1B54A32D192ED03ULL *
                           (static_cast<std::uint64_t>(domain) + 1)));
  return splitmix64(base + 0x9E3779B97F4A7C15ULL * index);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

double Rng::normal(double mean, double variance) {
  return mean + std::sqrt(variance) * normal();
}

double Rng::exponential(double rate) {
  return -std::log(1.0 - uniform01()) / rate;
}

std::uint64_t Rng::bounded(std::uint64_t bound) {
  // Rejection sampling over the top multiple of bound; no modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = eng_();
  } while (v >= limit);
  return v % bound;
}

void validate(const DistributionSpec& d) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NormalSpec>) {
          if (!(s.variance > 0.0))
            throw std::domain_error("NormalSpec: variance <= 0");
        } else if constexpr (std::is_same_v<T, ExponentialSpec>) {
          if (!(s.rate > 0.0))
            throw std::domain_error("ExponentialSpec: rate <= 0");
        } else {
          if (!(s.lo < s.hi))
            throw std::domain_error("UniformSpec: lo >= hi");
        }
      },
      d);
}

ProcessSpec as_process(const DistributionSpec& d) {
  return std::visit([](const auto& s) { return ProcessSpec{s}; }, d);
}

double draw(const DistributionSpec& d, Rng& rng) {
  return std::visit(
      [&rng](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NormalSpec>) {
          return rng.normal(s.mean, s.variance);
        } else if constexpr (std::is_same_v<T, ExponentialSpec>) {
          return rng.exponential(s.rate);
        } else {
          return rng.uniform(s.lo, s.hi);
        }
      },
      d);
}

std::vector<double> draw_sample(const DistributionSpec& d, std::size_t n,
                                std::uint64_t seed) {
  validate(d);
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = draw(d, rng);
  return out;
}

std::vector<double> simulate_ar1(const moments::Ar1Spec& a,
                                 std::uint64_t seed) {
  a.validate();
  Rng rng(seed);
  std::vector<double> out(a.n);
  const double stationary_sd = std::sqrt(a.marginal_variance());
  const double innovation_sd = std::sqrt(a.sigma2);
  out[0] = stationary_sd * rng.normal();
  for (std::size_t t = 1; t < a.n; ++t) {
    out[t] = a.rho * out[t - 1] + innovation_sd * rng.normal();
  }
  return out;
}

std::vector<double> draw_process_sample(const ProcessSpec& p, std::size_t n,
                                        std::uint64_t seed) {
  return std::visit(
      [n, seed](const auto& s) -> std::vector<double> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, moments::Ar1Spec>) {
          moments::Ar1Spec spec = s;
          spec.n = n;
          return simulate_ar1(spec, seed);
        } else {
          return draw_sample(DistributionSpec{s}, n, seed);
        }
      },
      p);
}

namespace {

/// Mean and the 2nd/4th central moments (population style, divisor r) of a
/// column, compensated.
struct ColumnMoments {
  double mean, m2, m4;
};

ColumnMoments column_moments(std::span<const double> y) {
  const double mean = samplestats::sample_mean(y);
  StableSum s2, s4;
  for (double v : y) {
    const double d = v - mean;
    const double d2 = d * d;
    s2.add(d2);
    s4.add(d2 * d2);
  }
  const double r = static_cast<double>(y.size());
  return ColumnMoments{mean, s2.value() / r, s4.value() / r};
}

}  // namespace

ReplicationReport run_replications(const ProcessSpec& p,
                                   const ReplicationOptions& o) {
  if (o.n < 2) throw std::domain_error("run_replications: n < 2");
  if (o.r < 2) throw std::domain_error("run_replications: r < 2");
  std::visit([](const auto& s) {
    using T = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<T, moments::Ar1Spec>) {
      s.validate();
    } else {
      validate(DistributionSpec{s});
    }
  }, p);

  const bool want_sm = o.n >= 4;
  std::vector<double> means(o.r), s2s(o.r);
  std::vector<std::array<double, 7>> sms;
  if (want_sm) sms.resize(o.r);

  detail::parallel_blocks(o.r, o.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto sample = draw_process_sample(
          p, o.n, stream_seed(o.seed, SeedDomain::kReplication, i));
      means[i] = samplestats::sample_mean(sample);
      s2s[i] = samplestats::sample_variance(sample);
      if (want_sm) {
        const auto sm = symsum::symmetric_moments(sample);
        sms[i] = {sm.mu4_hat,    sm.mu31_hat,  sm.mu22_hat, sm.mu211_hat,
                  sm.mu1111_hat, sm.mu2_tilde, sm.mu11_tilde};
      }
    }
  });

  ReplicationReport rep;
  rep.r = o.r;
  rep.n = o.n;
  const double r = static_cast<double>(o.r);

  const ColumnMoments s2m = column_moments(s2s);
  rep.mean_of_s2 = s2m.mean;
  const double var_s2_bessel = s2m.m2 * r / (r - 1.0);
  rep.var_of_s2 = var_s2_bessel;
  rep.se_of_mean_s2 = std::sqrt(var_s2_bessel / r);
  // SE of the variance estimate: the i.i.d. Var[s^2] formula applied to the
  // replicate column itself.
  rep.se_of_var_s2 = std::sqrt(std::max(
      0.0, moments::var_s2_iid(
               moments::IidMomentModel::from_central(s2m.mean, s2m.m2, s2m.m4),
               o.r)));

  StableSum s4sum;
  for (double v : s2s) s4sum.add(v * v);
  rep.mean_of_s4 = s4sum.value() / r;
  StableSum s4dev;
  for (double v : s2s) {
    const double d = v * v - rep.mean_of_s4;
    s4dev.add(d * d);
  }
  rep.se_of_mean_s4 = std::sqrt(s4dev.value() / (r - 1.0) / r);

  if (want_sm) {
    std::array<StableSum, 7> acc;
    for (const auto& row : sms) {
      for (int k = 0; k < 7; ++k) acc[static_cast<std::size_t>(k)].add(row[static_cast<std::size_t>(k)]);
    }
    moments::ExpectedSymmetricMoments esm;
    esm.e_mu4 = acc[0].value() / r;
    esm.e_mu31 = acc[1].value() / r;
    esm.e_mu22 = acc[2].value() / r;
    esm.e_mu211 = acc[3].value() / r;
    esm.e_mu1111 = acc[4].value() / r;
    esm.e_mu2_tilde = acc[5].value() / r;
    esm.e_mu11_tilde = acc[6].value() / r;
    esm.n = o.n;
    rep.mean_symmetric_moments = esm;
    rep.has_symmetric_moments = true;
  }

  if (o.keep_pairs) {
    rep.pairs.resize(o.r);
    for (std::size_t i = 0; i < o.r; ++i) rep.pairs[i] = {means[i], s2s[i]};
  }
  return rep;
}

moments::IidMomentModel population_moments(const DistributionSpec& d) {
  validate(d);
  return std::visit(
      [](const auto& s) -> moments::IidMomentModel {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NormalSpec>) {
          return moments::IidMomentModel::from_central(
              s.mean, s.variance, 3.0 * s.variance * s.variance);
        } else if constexpr (std::is_same_v<T, ExponentialSpec>) {
          const double scale = 1.0 / s.rate;
          const double s2 = scale * scale;
          return moments::IidMomentModel::from_central(scale, s2, 9.0 * s2 * s2);
        } else {
          const double w = s.hi - s.lo;
          const double w2 = w * w;
          return moments::IidMomentModel::from_central(0.5 * (s.lo + s.hi),
                                                       w2 / 12.0,
                                                       w2 * w2 / 80.0);
        }
      },
      d);
}

double population_mu3c(const DistributionSpec& d) {
  validate(d);
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExponentialSpec>) {
          return 2.0 / (s.rate * s.rate * s.rate);
        } else {
          return 0.0;  // normal and uniform are symmetric
        }
      },
      d);
}

}  // namespace varmoments::stochastic
