#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace varmoments::verify {

struct PropertyResult {
  std::string name;
  bool pass = false;
  double worst_residual = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::size_t max_n = 12;      // largest sample size for the oracle sweeps
  std::size_t cases = 200;     // random samples per property
  std::uint64_t seed = 42;
  /// Test mode: perturbs one s^4 decomposition coefficient so the identity
  /// check must fail. Exists to prove the harness can fail.
  bool inject_defect = false;
};

struct VerifyReport {
  std::vector<PropertyResult> properties;
  bool all_pass = false;
};

/// The self-contained oracle-equivalence battery: symmetric moments vs the
/// O(n^4) brute force, the pair-kernel identity for s^2, the five-term s^4
/// regrouping, the i.i.d./normal reduction chain, the AR(1) matrix route and
/// the weighted geometric-sum identity.
[[nodiscard]] VerifyReport run_verification(const VerifyOptions& o);

}  // namespace varmoments::verify
