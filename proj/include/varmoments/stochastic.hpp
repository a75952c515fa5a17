#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "varmoments/moments.hpp"

namespace varmoments::stochastic {

struct NormalSpec {
  double mean = 0.0;
  double variance = 1.0;
};
struct ExponentialSpec {
  double rate = 1.0;
};
struct UniformSpec {
  double lo = 0.0;
  double hi = 1.0;
};

using DistributionSpec = std::variant<NormalSpec, ExponentialSpec, UniformSpec>;

/// Either a parent distribution sampled i.i.d. or a stationary AR(1) path.
using ProcessSpec =
    std::variant<NormalSpec, ExponentialSpec, UniformSpec, moments::Ar1Spec>;

void validate(const DistributionSpec& d);
[[nodiscard]] ProcessSpec as_process(const DistributionSpec& d);

/// splitmix64 finalizer; the basis of all sub-stream seeding.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x);

/// Seed-derivation domains. Every consumer of randomness owns a domain, and
/// every replication/permutation an index, so streams never overlap and
/// aggregates do not depend on worker count.
enum class SeedDomain : std::uint64_t {
  kReplication = 0,
  kEcfSample = 1,
  kPermutation = 2,
};
[[nodiscard]] std::uint64_t stream_seed(std::uint64_t master, SeedDomain domain,
                                        std::uint64_t index);

/// mt19937_64 plus fixed variate transforms: Box-Muller for normals
/// (pair-cached), inverse CDF for exponential and uniform. The transforms
/// are pinned here so reproducibility is a property of this code, not of a
/// library's distribution internals. Bit-reproducible per build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Standard normal via Box-Muller; the sine partner is cached.
  double normal();
  double normal(double mean, double variance);
  double exponential(double rate);
  /// Uniform integer in [0, bound), rejection-free modulo bias removed.
  std::uint64_t bounded(std::uint64_t bound);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// One draw from the parent distribution.
[[nodiscard]] double draw(const DistributionSpec& d, Rng& rng);

/// n i.i.d. draws.
[[nodiscard]] std::vector<double> draw_sample(const DistributionSpec& d,
                                              std::size_t n,
                                              std::uint64_t seed);

/// Stationary AR(1) path: X_1 from the stationary law N(0, sigma2/(1-rho^2)),
/// then X_t = rho X_{t-1} + eps_t with eps_t ~ N(0, sigma2). Exact stationary
/// initialization, no burn-in. Deterministic given (spec, seed); at rho = 0
/// the output coincides draw-for-draw with i.i.d. N(0, sigma2) on the same
/// seed.
[[nodiscard]] std::vector<double> simulate_ar1(const moments::Ar1Spec& a,
                                               std::uint64_t seed);

[[nodiscard]] std::vector<double> draw_process_sample(const ProcessSpec& p,
                                                      std::size_t n,
                                                      std::uint64_t seed);

struct ReplicationOptions {
  std::size_t n = 10;
  std::size_t r = 100000;
  std::uint64_t seed = 42;
  bool keep_pairs = false;
  /// 0 = hardware concurrency. Results are identical for any value.
  unsigned threads = 0;
};

/// Monte Carlo aggregates over r independent replications. Standard error
/// of var_of_s2 comes from the fourth central moment of the s^2 replicates
/// (the i.i.d. variance-of-sample-variance formula applied to them).
struct ReplicationReport {
  std::size_t r = 0;
  std::size_t n = 0;
  double mean_of_s2 = 0.0;
  double se_of_mean_s2 = 0.0;
  double var_of_s2 = 0.0;
  double se_of_var_s2 = 0.0;
  double mean_of_s4 = 0.0;
  double se_of_mean_s4 = 0.0;
  moments::ExpectedSymmetricMoments mean_symmetric_moments{};
  bool has_symmetric_moments = false;
  /// (sample mean, sample variance) per replication, if requested.
  std::vector<std::pair<double, double>> pairs;
};

/// Runs r replications of size n. Replication i draws from the sub-seed
/// stream_seed(seed, kReplication, i); per-replication rows are stored by
/// index and reduced sequentially, so the report does not depend on the
/// worker partition. Requires n >= 2 and r >= 2; symmetric-moment plug-ins
/// are produced when n >= 4.
[[nodiscard]] ReplicationReport run_replications(const ProcessSpec& p,
                                                 const ReplicationOptions& o);

/// Analytic population moments of the parent distributions.
[[nodiscard]] moments::IidMomentModel population_moments(
    const DistributionSpec& d);
/// Third central moment (the Cov(mean, s^2) = mu3c/n channel).
[[nodiscard]] double population_mu3c(const DistributionSpec& d);

}  // namespace varmoments::stochastic
