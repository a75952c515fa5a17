#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace varmoments::detail {

inline void require_sample(std::span<const double> x, std::size_t min_n,
                           const char* who) {
  if (x.size() < min_n) {
    throw std::domain_error(std::string(who) + ": sample size " +
                            std::to_string(x.size()) + " < required " +
                            std::to_string(min_n));
  }
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(who) +
                                  ": sample contains a non-finite value");
    }
  }
}

/// Runs fn(begin, end) over a block partition of [0, total). Callers must
/// write to disjoint index-addressed storage; reduction happens elsewhere in
/// index order, so results never depend on the partition.
inline void parallel_blocks(std::size_t total, unsigned threads,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
  unsigned t = threads != 0 ? threads : std::thread::hardware_concurrency();
  if (t == 0) t = 1;
  if (t > total) t = static_cast<unsigned>(total ? total : 1);
  if (t <= 1 || total < 2) {
    fn(0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(t);
  const std::size_t chunk = (total + t - 1) / t;
  for (unsigned k = 0; k < t; ++k) {
    const std::size_t b = k * chunk;
    const std::size_t e = std::min(total, b + chunk);
    if (b >= e) break;
    pool.emplace_back(fn, b, e);
  }
  for (auto& th : pool) th.join();
}

}  // namespace varmoments::detail
