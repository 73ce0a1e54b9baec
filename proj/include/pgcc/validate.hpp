#pragma once

// Randomised invariant suites run by `pgcc validate`.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pgcc/game.hpp"

namespace pgcc {

struct CheckResult {
  std::string suite;
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;  // first failure, if any
  bool passed() const { return failures == 0; }
};

struct ValidateOptions {
  std::uint64_t seed = 1;
  double step_factor = 1.0;  // multiplies the default DGPC step in the engine suite
  Tolerances tolerances{};
};

// "sets", "graph", "potential", "engine".
const std::vector<std::string_view>& suite_names();

// Runs one suite, or every suite for "all". Throws std::invalid_argument for
// unknown names.
std::vector<CheckResult> run_suite(std::string_view suite, const ValidateOptions& options = {});

}  // namespace pgcc
