#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace varmoments {

/// Compensated (Kahan-Neumaier) accumulator. Tracks the rounding error of
/// every addition and folds it back into the final value, so the result is
/// accurate to O(eps) independent of the number of terms.
class StableSum {
 public:
  StableSum() = default;
  explicit StableSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  StableSum& operator+=(double x) {
    add(x);
    return *this;
  }

  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Compensated sum of a range.
[[nodiscard]] inline double stable_sum(std::span<const double> xs) {
  StableSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

}  // namespace varmoments
