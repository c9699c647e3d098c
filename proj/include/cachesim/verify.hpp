#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cachesim {

struct VerifySuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
};

/// Self-check suites: random bipartite instances against the exhaustive
/// matching oracle, random knapsack instances against the enumeration
/// oracle, and pmf normalization/shape checks across a parameter grid.
std::vector<VerifySuiteResult> run_verification(std::uint64_t seed = 20240501);

}  // namespace cachesim
