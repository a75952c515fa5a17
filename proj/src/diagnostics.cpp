#include "varmoments/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "detail.hpp"
#include "varmoments/kahan.hpp"
#include "varmoments/samplestats.hpp"

namespace varmoments::diagnostics {

namespace {

// ---------------------------------------------------------------------------
// Distance covariance in O(n log n).
//
// With a = |x_i - x_j| distances, row sums a_i = sum_j a_ij and grand sum
// T_a, double centering gives
//   n^2 dCov^2 = sum_ij a_ij b_ij - (2/n) sum_i a_i b_i + T_a T_b / n^2.
// Row/grand sums are prefix sums over the sorted column. The cross term
// sum_ij a_ij b_ij is swept in x order with Fenwick trees over y ranks:
// for each j, pairs split by y_i <= y_j vs y_i > y_j so the absolute values
// drop, leaving four prefix aggregates (count, sum x, sum y, sum xy).
// ---------------------------------------------------------------------------

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0.0) {}
  void add(std::size_t i, double v) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += v;
  }
  // sum of entries with index <= i
  [[nodiscard]] double prefix(std::size_t i) const {
    double s = 0.0;
    for (++i; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<double> tree_;
};

struct ColumnGeometry {
  std::vector<double> row_sums;  // per original index
  double grand_sum = 0.0;
  double sq_sum = 0.0;  // sum_ij a_ij^2, closed form for 1-D columns
};

ColumnGeometry column_geometry(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  ColumnGeometry g;
  g.row_sums.resize(n);
  StableSum total, totsq;
  for (double x : v) {
    total.add(x);
    totsq.add(x * x);
  }
  const double tot = total.value();
  double prefix = 0.0;
  StableSum grand;
  for (std::size_t t = 0; t < n; ++t) {
    const double x = v[order[t]];
    prefix += x;
    const double rank = static_cast<double>(t + 1);
    const double row =
        (2.0 * rank - static_cast<double>(n)) * x + tot - 2.0 * prefix;
    g.row_sums[order[t]] = row;
    grand.add(row);
  }
  g.grand_sum = grand.value();
  const double dn = static_cast<double>(n);
  g.sq_sum = 2.0 * (dn * totsq.value() - tot * tot);
  return g;
}

std::vector<std::size_t> rank_of(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n), rank(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  for (std::size_t t = 0; t < n; ++t) rank[order[t]] = t;
  return rank;
}

/// sum_{i != j} |x_i - x_j| |y_i - y_j|, O(n log n).
double abs_product_sum(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  const auto yrank = rank_of(y);

  Fenwick cnt(n), sx(n), sy(n), sxy(n);
  double c_all = 0.0;
  StableSum sx_all, sy_all, sxy_all, acc;
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t j = order[t];
    const double xj = x[j], yj = y[j];
    const std::size_t rj = yrank[j];
    const double c_le = cnt.prefix(rj);
    const double sx_le = sx.prefix(rj);
    const double sy_le = sy.prefix(rj);
    const double sxy_le = sxy.prefix(rj);
    // y_i <= y_j: (x_j - x_i)(y_j - y_i)
    acc.add(c_le * xj * yj - yj * sx_le - xj * sy_le + sxy_le);
    // y_i > y_j: (x_j - x_i)(y_i - y_j)
    const double c_gt = c_all - c_le;
    const double sx_gt = sx_all.value() - sx_le;
    const double sy_gt = sy_all.value() - sy_le;
    const double sxy_gt = sxy_all.value() - sxy_le;
    acc.add(xj * sy_gt - c_gt * xj * yj - sxy_gt + yj * sx_gt);
    cnt.add(rj, 1.0);
    sx.add(rj, xj);
    sy.add(rj, yj);
    sxy.add(rj, xj * yj);
    c_all += 1.0;
    sx_all.add(xj);
    sy_all.add(yj);
    sxy_all.add(xj * yj);
  }
  return 2.0 * acc.value();  // ordered pairs
}

double dcov_sq(std::span<const double> x, std::span<const double> y,
               const ColumnGeometry& gx, const ColumnGeometry& gy) {
  const double dn = static_cast<double>(x.size());
  const double s1 = abs_product_sum(x, y);
  StableSum s2;
  for (std::size_t i = 0; i < x.size(); ++i)
    s2.add(gx.row_sums[i] * gy.row_sums[i]);
  const double v = s1 / (dn * dn) - 2.0 * s2.value() / (dn * dn * dn) +
                   gx.grand_sum * gy.grand_sum / (dn * dn * dn * dn);
  return std::max(0.0, v);
}

double dvar_sq(std::span<const double> x, const ColumnGeometry& gx) {
  const double dn = static_cast<double>(x.size());
  StableSum s2;
  for (double r : gx.row_sums) s2.add(r * r);
  const double v = gx.sq_sum / (dn * dn) - 2.0 * s2.value() / (dn * dn * dn) +
                   gx.grand_sum * gx.grand_sum / (dn * dn * dn * dn);
  return std::max(0.0, v);
}

double dcor_from_parts(double dcov2, double dvarx, double dvary) {
  const double denom = std::sqrt(dvarx * dvary);
  if (!(denom > 0.0)) return 0.0;
  return std::sqrt(std::max(0.0, dcov2 / denom));
}

}  // namespace

double distance_correlation(std::span<const double> x,
                            std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::domain_error("distance_correlation: need two equal columns");
  }
  const ColumnGeometry gx = column_geometry(x);
  const ColumnGeometry gy = column_geometry(y);
  return dcor_from_parts(dcov_sq(x, y, gx, gy), dvar_sq(x, gx),
                         dvar_sq(y, gy));
}

DependenceSummary dependence_summary(
    std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 100) {
    throw std::domain_error(
        "dependence_summary: fewer than 100 pairs (power too low)");
  }
  const std::size_t r = pairs.size();
  std::vector<double> xs(r), ys(r);
  for (std::size_t i = 0; i < r; ++i) {
    xs[i] = pairs[i].first;
    ys[i] = pairs[i].second;
  }
  const double mx = samplestats::sample_mean(xs);
  const double my = samplestats::sample_mean(ys);
  StableSum sxx, syy, sxy, s22;
  for (std::size_t i = 0; i < r; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx.add(dx * dx);
    syy.add(dy * dy);
    sxy.add(dx * dy);
    s22.add(dx * dx * dy * dy);
  }
  const double dr = static_cast<double>(r);
  DependenceSummary out;
  out.cov_mean_s2 = sxy.value() / (dr - 1.0);
  // Delta-method SE of the sample covariance: Var ~ (E[dx^2 dy^2] - cov^2)/r.
  const double m22 = s22.value() / dr;
  out.se_cov = std::sqrt(
      std::max(0.0, m22 - out.cov_mean_s2 * out.cov_mean_s2) / dr);
  const double denom = std::sqrt(sxx.value() * syy.value());
  if (!(denom > 0.0)) {
    out.degenerate = true;
    out.pearson = 0.0;
    out.dcor = 0.0;
    return out;
  }
  out.pearson = sxy.value() / denom;
  out.dcor = distance_correlation(xs, ys);
  return out;
}

PermutationBand dcor_permutation_band(
    std::span<const std::pair<double, double>> pairs, std::size_t permutations,
    std::uint64_t seed, unsigned threads) {
  if (pairs.size() < 100) {
    throw std::domain_error("dcor_permutation_band: fewer than 100 pairs");
  }
  if (permutations < 19) {
    throw std::domain_error("dcor_permutation_band: too few permutations");
  }
  const std::size_t r = pairs.size();
  std::vector<double> xs(r), ys(r);
  for (std::size_t i = 0; i < r; ++i) {
    xs[i] = pairs[i].first;
    ys[i] = pairs[i].second;
  }
  // x geometry, dVar terms and the multiset of y row sums are permutation
  // invariant; only the cross sweep depends on the pairing.
  const ColumnGeometry gx = column_geometry(xs);
  const ColumnGeometry gy = column_geometry(ys);
  const double dvarx = dvar_sq(xs, gx);
  const double dvary = dvar_sq(ys, gy);

  std::vector<double> stats(permutations);
  detail::parallel_blocks(
      permutations, threads, [&](std::size_t b, std::size_t e) {
        std::vector<std::size_t> idx(r);
        std::vector<double> yp(r);
        ColumnGeometry gyp;
        gyp.grand_sum = gy.grand_sum;
        gyp.sq_sum = gy.sq_sum;
        gyp.row_sums.resize(r);
        for (std::size_t k = b; k < e; ++k) {
          stochastic::Rng rng(stochastic::stream_seed(
              seed, stochastic::SeedDomain::kPermutation, k));
          std::iota(idx.begin(), idx.end(), std::size_t{0});
          for (std::size_t i = r - 1; i > 0; --i) {
            const std::size_t j =
                static_cast<std::size_t>(rng.bounded(static_cast<std::uint64_t>(i + 1)));
            std::swap(idx[i], idx[j]);
          }
          for (std::size_t i = 0; i < r; ++i) {
            yp[i] = ys[idx[i]];
            gyp.row_sums[i] = gy.row_sums[idx[i]];
          }
          stats[k] =
              dcor_from_parts(dcov_sq(xs, yp, gx, gyp), dvarx, dvary);
        }
      });

  std::sort(stats.begin(), stats.end());
  const auto quantile = [&](double q) {
    // order statistic at ceil(q * K) of K sorted null draws
    const std::size_t pos = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(permutations)));
    return stats[std::min(permutations - 1, pos == 0 ? 0 : pos - 1)];
  };
  return PermutationBand{quantile(0.95), quantile(0.99), permutations};
}

// ---------------------------------------------------------------------------
// Empirical characteristic function diagnostics.
// ---------------------------------------------------------------------------

std::vector<double> symmetric_grid(double u_max, double h) {
  if (!(h > 0.0) || !(u_max > 0.0)) {
    throw std::domain_error("symmetric_grid: need positive u_max and h");
  }
  const auto steps = static_cast<std::size_t>(std::llround(u_max / h));
  if (steps == 0) throw std::domain_error("symmetric_grid: u_max < h");
  std::vector<double> grid(2 * steps + 1);
  for (std::size_t k = 0; k <= 2 * steps; ++k) {
    grid[k] = (static_cast<double>(k) - static_cast<double>(steps)) * h;
  }
  grid[steps] = 0.0;
  return grid;
}

namespace {

struct GridShape {
  std::size_t center;  // index of u = 0
  double h;
};

GridShape check_grid(std::span<const double> u, double stddev) {
  if (u.size() < 3 || u.size() % 2 == 0) {
    throw std::domain_error(
        "ecf_curvature: grid must be symmetric about 0 with odd length >= 3");
  }
  const std::size_t K = u.size();
  const double h = u[1] - u[0];
  if (!(h > 0.0) || h > 0.1 + 1e-12) {
    throw std::domain_error("ecf_curvature: spacing h must lie in (0, 0.1]");
  }
  for (std::size_t k = 1; k < K; ++k) {
    if (std::abs((u[k] - u[k - 1]) - h) > 1e-9 * std::max(1.0, h)) {
      throw std::domain_error("ecf_curvature: grid spacing is not uniform");
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    if (std::abs(u[k] + u[K - 1 - k]) > 1e-12 * std::max(1.0, std::abs(u[k]))) {
      throw std::domain_error("ecf_curvature: grid is not symmetric about 0");
    }
  }
  const std::size_t center = K / 2;
  if (u[center] != 0.0) {
    throw std::domain_error("ecf_curvature: grid must contain u = 0");
  }
  if (stddev > 0.0 && u[K - 1] > 2.0 / stddev + 1e-12) {
    throw std::domain_error(
        "ecf_curvature: max |u| exceeds 2/stddev(x) (log-branch safety)");
  }
  return GridShape{center, h};
}

}  // namespace

EcfCurve ecf_curvature(std::span<const double> x,
                       std::span<const double> u_grid, double phi_floor) {
  detail::require_sample(x, 1000, "ecf_curvature");
  const double sigma2 = samplestats::sample_variance(x);
  const GridShape shape = check_grid(u_grid, std::sqrt(sigma2));
  const std::size_t K = u_grid.size();
  const std::size_t center = shape.center;
  const std::size_t pos = K - center;  // grid points with u >= 0
  const std::size_t m = x.size();
  const double dm = static_cast<double>(m);
  using cd = std::complex<double>;

  // phi-hat on the nonnegative half-grid; the negative side is the
  // conjugate mirror (real data), which keeps the curve exactly Hermitian.
  std::vector<cd> step(m);
  for (std::size_t j = 0; j < m; ++j) {
    step[j] = std::polar(1.0, shape.h * x[j]);
  }
  std::vector<cd> phi_pos(pos);
  {
    std::vector<cd> power(m, cd{1.0, 0.0});
    phi_pos[0] = cd{1.0, 0.0};
    for (std::size_t k = 1; k < pos; ++k) {
      StableSum re, im;
      for (std::size_t j = 0; j < m; ++j) {
        power[j] *= step[j];
        re.add(power[j].real());
        im.add(power[j].imag());
      }
      phi_pos[k] = cd{re.value() / dm, im.value() / dm};
    }
  }

  double min_abs = 1.0;
  for (const cd& p : phi_pos) min_abs = std::min(min_abs, std::abs(p));
  if (min_abs < phi_floor) {
    throw std::range_error(
        "ecf_curvature: characteristic function too small; shrink u range");
  }

  // log phi with the branch tracked outward from u = 0.
  std::vector<cd> psi_pos(pos);
  psi_pos[0] = cd{0.0, 0.0};
  double theta = 0.0;
  for (std::size_t k = 1; k < pos; ++k) {
    theta += std::arg(phi_pos[k] * std::conj(phi_pos[k - 1]));
    psi_pos[k] = cd{std::log(std::abs(phi_pos[k])), theta};
  }

  const auto psi_at = [&](std::ptrdiff_t signed_k) -> cd {
    return signed_k >= 0 ? psi_pos[static_cast<std::size_t>(signed_k)]
                         : std::conj(psi_pos[static_cast<std::size_t>(-signed_k)]);
  };
  const auto phi_at = [&](std::ptrdiff_t signed_k) -> cd {
    return signed_k >= 0 ? phi_pos[static_cast<std::size_t>(signed_k)]
                         : std::conj(phi_pos[static_cast<std::size_t>(-signed_k)]);
  };

  EcfCurve out;
  out.u_grid.assign(u_grid.begin(), u_grid.end());
  out.sigma2_hat = sigma2;
  out.min_abs_phi = min_abs;
  out.psi_re.resize(K);
  out.psi_im.resize(K);
  out.curv_re.assign(K, std::numeric_limits<double>::quiet_NaN());
  out.curv_im.assign(K, std::numeric_limits<double>::quiet_NaN());
  out.se_curv_re.assign(K, std::numeric_limits<double>::quiet_NaN());
  out.se_curv_im.assign(K, std::numeric_limits<double>::quiet_NaN());

  const double h2 = shape.h * shape.h;
  for (std::size_t k = 0; k < K; ++k) {
    const std::ptrdiff_t sk =
        static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(center);
    const cd psi = psi_at(sk);
    out.psi_re[k] = psi.real();
    out.psi_im[k] = psi.imag();
    if (k == 0 || k == K - 1) continue;
    const cd curv = (psi_at(sk + 1) - 2.0 * psi_at(sk) + psi_at(sk - 1)) / h2;
    out.curv_re[k] = curv.real();
    out.curv_im[k] = curv.imag();
  }

  // Delta-method SE of the second difference of log phi-hat: the influence
  // of observation j is Z_j = sum_k w_k e^{i u_k x_j} with plug-in weights
  // w = [1, -2, 1] / (h^2 phi-hat); the Z_j are mean zero by construction.
  // Computed on the nonnegative side and mirrored (Hermitian symmetry).
  {
    std::vector<cd> p_prev(m), p_cur(m, cd{1.0, 0.0}), p_next(m);
    for (std::size_t j = 0; j < m; ++j) p_next[j] = step[j];
    for (std::size_t k = 0; k + 1 < pos; ++k) {
      // signed grid offsets k-1, k, k+1; at k == 0 the left neighbor is the
      // conjugate of the right one.
      const cd w_m = 1.0 / (h2 * phi_at(static_cast<std::ptrdiff_t>(k) - 1));
      const cd w_0 = -2.0 / (h2 * phi_at(static_cast<std::ptrdiff_t>(k)));
      const cd w_p = 1.0 / (h2 * phi_at(static_cast<std::ptrdiff_t>(k) + 1));
      StableSum vre, vim;
      for (std::size_t j = 0; j < m; ++j) {
        const cd left = k == 0 ? std::conj(p_next[j]) : p_prev[j];
        const cd z = w_m * left + w_0 * p_cur[j] + w_p * p_next[j];
        vre.add(z.real() * z.real());
        vim.add(z.imag() * z.imag());
      }
      // Var over j divided by m (Z has exact zero mean across j).
      const double se_re = std::sqrt(vre.value()) / dm;
      const double se_im = std::sqrt(vim.value()) / dm;
      out.se_curv_re[center + k] = se_re;
      out.se_curv_im[center + k] = se_im;
      if (k > 0) {
        out.se_curv_re[center - k] = se_re;
        out.se_curv_im[center - k] = se_im;
      }
      if (k + 2 < pos) {
        p_prev.swap(p_cur);
        p_cur.swap(p_next);
        for (std::size_t j = 0; j < m; ++j) p_next[j] = p_cur[j] * step[j];
      }
    }
  }
  return out;
}

IndependenceReport normality_independence_report(
    const stochastic::DistributionSpec& d, const IndependenceOptions& o) {
  stochastic::validate(d);
  stochastic::ReplicationOptions ro;
  ro.n = o.n;
  ro.r = o.r;
  ro.seed = o.seed;
  ro.keep_pairs = true;
  ro.threads = o.threads;
  const auto rep = stochastic::run_replications(stochastic::as_process(d), ro);

  IndependenceReport out;
  out.n = o.n;
  out.r = o.r;
  out.m = o.m;
  out.seed = o.seed;
  out.dependence = dependence_summary(rep.pairs);
  out.band =
      dcor_permutation_band(rep.pairs, o.permutations, o.seed, o.threads);

  const auto big = stochastic::draw_sample(
      d, o.m, stochastic::stream_seed(o.seed, stochastic::SeedDomain::kEcfSample, 0));
  const auto grid = symmetric_grid(o.u_max, o.h);
  out.curve = ecf_curvature(big, grid);
  out.sigma2_hat = out.curve.sigma2_hat;
  out.ecf_budget = o.ecf_budget;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    const double dre = out.curve.curv_re[k] + out.curve.sigma2_hat;
    const double dim = out.curve.curv_im[k];
    worst = std::max(worst, std::hypot(dre, dim));
  }
  out.max_curvature_deviation = worst;

  out.cov_within_3se =
      std::abs(out.dependence.cov_mean_s2) <= 3.0 * out.dependence.se_cov;
  out.dcor_inside_95 = out.dependence.dcor <= out.band.q95;
  out.dcor_above_99 = out.dependence.dcor > out.band.q99;
  out.ecf_quadratic = worst <= o.ecf_budget;
  const bool dependent = !out.dcor_inside_95 || !out.cov_within_3se;
  out.verdict = dependent ? "dependence detected" : "consistent with independence";
  out.ecf_verdict = out.ecf_quadratic
                        ? "log-cf curvature consistent with constant -sigma^2"
                        : "log-cf curvature non-quadratic";
  return out;
}

}  // namespace varmoments::diagnostics
