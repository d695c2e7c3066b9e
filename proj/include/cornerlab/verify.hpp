#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cornerlab {

struct VerifyOptions {
  std::vector<std::int64_t> primes{3, 5, 7, 11};
  std::vector<std::int64_t> grids{4, 8};
  std::uint64_t seed = 0;
  int threads = 1;
};

struct VerifyReport {
  // [{"name", "passed", "measured", "informational"?}, ...] in a fixed order.
  nlohmann::json checks = nlohmann::json::array();
  bool all_passed = true;
  std::string digest;  // SHA-256 of the checks array; independent of thread count
};

// Invariant battery over every module at the listed sizes. Primes must be ≥ 3 and
// grid sizes ≥ 1 (InvalidArgument otherwise).
VerifyReport verify_claims(const VerifyOptions& options);

}  // namespace cornerlab
