#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pdlab {

inline constexpr std::uint64_t kDefaultSeed = 12345;

struct CheckConfig {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct CheckResult {
  std::string id;
  bool pass = false;
  double seconds = 0.0;
  std::vector<std::string> lines;  // per-grid-point detail

  std::string summary() const;
};

struct CheckSpec {
  std::string id;
  bool slow = false;  // excluded from the desk profile
  std::string title;
  std::function<CheckResult(const CheckConfig&)> fn;
};

// All statistical acceptance checks, in spec order. Results are
// deterministic in (seed, threads-independent) fashion: every replicate
// owns a stream, so any parallelism level produces identical output.
const std::vector<CheckSpec>& check_registry();

const CheckSpec* find_check(const std::string& id);
CheckResult run_check(const std::string& id, const CheckConfig& cfg);

}  // namespace pdlab
