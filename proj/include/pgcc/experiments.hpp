#pragma once

// Source-localization experiments: instance generation, Monte-Carlo
// validation runs and the Fiedler-value convergence-rate sweep.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "pgcc/engine.hpp"

namespace pgcc {

struct LocalizationInstance {
  std::shared_ptr<const GameInstance> game;  // graph, balls and layout
  Point source;
  double epsilon = 0.0;
  std::uint64_t seed = 0;      // requested seed
  std::uint64_t sub_seed = 0;  // seed of the accepted (connected) draw
  std::size_t attempts = 0;    // draws used, >= 1

  const Graph& graph() const { return game->graph(); }
  const GeometricLayout& layout() const { return *game->layout(); }
};

// Ball around `location` whose boundary clears `source` by epsilon.
Ball localization_ball(const Point& location, const Point& source, double epsilon);

// Nodes uniform in [0,1]^q, source uniform in [0.25,0.75]^q, and
// C_n = Ball(l_n, ||l_n - z|| + epsilon). Disconnected draws are rejected and
// redrawn with the next sub-seed. Throws InstanceGenerationError after
// max_attempts disconnected draws.
LocalizationInstance make_localization_instance(std::size_t n, std::size_t q, double rho,
                                                double epsilon, std::uint64_t seed,
                                                std::size_t max_attempts = 100);

// A connected random graph (random spanning tree plus extra edges) whose sets
// (balls, boxes and half-spaces) all contain a common random point with some
// margin. Used by the property suites.
struct FeasibleInstance {
  std::shared_ptr<const GameInstance> game;
  Point common_point;
};
FeasibleInstance random_feasible_instance(std::uint64_t seed, std::size_t nodes, std::size_t q,
                                          double extra_edge_probability = 0.3);

struct ValidationParams {
  std::size_t n = 100;
  std::size_t q = 2;
  double rho = 0.3;
  double epsilon = 0.01;
  std::size_t trials = 50;
  std::size_t max_iters = 0;  // 0 selects 100 * n
  double threshold = 1e-5;
  double step_size = 0.0;     // 0 selects default_step_size
  std::size_t pocs_cycles = 40;
  bool run_dgtc = true;
  bool run_dgpc = true;
  bool run_pocs = true;
  std::uint64_t base_seed = 1;
  std::size_t max_attempts = 100;
  std::size_t threads = 1;
  Tolerances tolerances{};
};

struct TrialResult {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  LocalizationInstance instance;
  double fiedler = 0.0;
  Trace dgtc;
  Trace dgpc;
  PocsResult pocs;                 // started from the origin
  double pocs_max_distance = 0.0;  // max_n distance of the POCS point to C_n
};

struct ValidationResult {
  std::vector<TrialResult> trials;  // ordered by trial index
};

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial);

ValidationResult validation_study(const ValidationParams& params);

// Per-iteration median of the consensus metric across traces. Shorter traces
// are extended with their final value.
std::vector<double> median_curve(const std::vector<const Trace*>& traces);

struct SweepParams {
  std::size_t n = 100;
  std::size_t q = 2;
  double rho_min = 0.1;
  double rho_max = 0.4;
  double epsilon = 0.01;
  std::size_t realizations = 200;
  std::size_t max_iters = 0;  // 0 selects 100 * n
  double threshold = 1e-5;
  std::uint64_t base_seed = 1;
  std::size_t max_candidates_per_realization = 200;
  std::size_t threads = 1;
  Tolerances tolerances{};
};

struct SweepRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double rho = 0.0;
  double fiedler = 0.0;
  std::size_t iters_dgtc = 0;
  bool conv_dgtc = false;
  std::size_t iters_dgpc = 0;
  bool conv_dgpc = false;
  InvariantViolations dgtc_violations;
  InvariantViolations dgpc_violations;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::size_t candidates = 0;  // draws including rejected disconnected ones
};

// Each candidate draws rho uniformly from [rho_min, rho_max] and one topology;
// disconnected candidates are discarded until `realizations` connected records
// exist.
SweepResult rate_sweep(const SweepParams& params);

double median(std::vector<double> values);

struct MedianComparison {
  std::size_t count = 0;
  double median_dgtc = 0.0;
  double median_dgpc = 0.0;
};

struct SweepSummary {
  MedianComparison below;  // fiedler < cut
  MedianComparison above;  // fiedler >= cut
  MedianComparison all;
};

SweepSummary summarize_sweep(const std::vector<SweepRecord>& records, double fiedler_cut);

// Fiedler cut separating the sparse regime: 3 for q = 2, 7 for q = 4, and a
// linear interpolation of the two otherwise.
double default_fiedler_cut(std::size_t q);

// CSV writers. Floats are written in shortest round-trip form.
void write_validation_csv(std::ostream& os, const ValidationResult& result);
void write_median_csv(std::ostream& os, const ValidationResult& result);
void write_trace_csv(std::ostream& os, const Trace& trace);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);
void write_pocs_csv(std::ostream& os, const ValidationResult& result);

}  // namespace pgcc
