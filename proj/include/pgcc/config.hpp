#pragma once

// Flat key-value experiment configuration shared by every CLI command.
//
// Text format: one `key = value` per line, `#` starts a comment, blank lines
// are ignored. Keys use underscores; dashes are accepted as a spelling of
// underscores. Unknown keys and malformed values raise ConfigError.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "pgcc/experiments.hpp"

namespace pgcc {

struct RunConfig {
  std::size_t n = 100;
  std::size_t q = 2;
  double rho = 0.3;
  double rho_min = 0.1;
  double rho_max = 0.4;
  double epsilon = 0.01;
  std::size_t trials = 50;
  std::size_t realizations = 200;
  double threshold = 1e-5;
  std::size_t max_iters = 0;      // 0 selects 100 * n
  double step_size = 0.0;         // 0 selects 0.99 * max step
  std::size_t cycles = 40;
  double fiedler_cut = 0.0;       // 0 selects default_fiedler_cut(q)
  std::uint64_t seed = 1;
  std::size_t max_attempts = 100;
  std::size_t threads = 1;
  std::string out;
  std::string suite = "all";
  double step_factor = 1.0;       // validate: scales the DGPC step (debugging)
  double tol_feasibility = 1e-9;
  double tol_fixed_point = 1e-18;

  bool operator==(const RunConfig&) const = default;
};

// Parses the text format on top of `base`.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// Every key, fixed order, numbers in shortest round-trip form.
std::string to_config_text(const RunConfig& config);

// Range checks shared by all commands; throws ConfigError.
void check_common(const RunConfig& c);
void check_for_run(const RunConfig& c);
void check_for_sweep(const RunConfig& c);

ValidationParams to_validation_params(const RunConfig& c);
SweepParams to_sweep_params(const RunConfig& c);
Tolerances to_tolerances(const RunConfig& c);

}  // namespace pgcc
