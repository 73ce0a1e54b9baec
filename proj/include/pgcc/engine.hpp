#pragma once

// Synchronous-round simulation of the two distributed consensus algorithms
// (best-response DGTC and gradient-projection DGPC) and the centralised POCS
// baseline.

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pgcc/game.hpp"

namespace pgcc {

enum class Algorithm { dgtc, dgpc };

std::string_view to_string(Algorithm algo);
Algorithm parse_algorithm(std::string_view name);

struct EngineState {
  std::shared_ptr<const GameInstance> instance;
  StrategyProfile profile;
  std::size_t t = 0;
  double step_size = 0.0;  // DGPC only
};

// p_n^(0) = P_{C_n}(anchor_n), where the anchor is the node's own position when
// the instance carries a layout and the origin otherwise.
StrategyProfile initialize(const GameInstance& inst);

// Initial state with the default DGPC step size (0 for edgeless graphs).
EngineState make_state(std::shared_ptr<const GameInstance> instance);

struct DgtcRoundResult {
  EngineState state;
  std::vector<NodeId> updated;        // winners, ascending
  std::vector<double> metrics;        // m_n of this round
  double max_metric = 0.0;
};

// One DGTC round. Every node computes r_n and m_n from the round-start profile;
// node n adopts r_n iff m_n beats every neighbour's metric, or ties the maximum
// and has a larger id than the largest-id neighbour attaining it.
DgtcRoundResult dgtc_round(const EngineState& state);

// One DGPC round: p_n <- P_{C_n}(p_n - 2 s sum_{k in N_n}(p_n - p_k)) for all n
// simultaneously. Throws std::invalid_argument for a non-positive step; steps
// above max_step_size are accepted (see check_step_size).
EngineState dgpc_round(const EngineState& state);

enum class StepSizeStatus { ok, nonpositive, above_bound };
StepSizeStatus check_step_size(const GameInstance& inst, double step);

struct PocsResult {
  Point point;
  std::vector<double> displacements;  // ||x_end - x_start|| per cycle
};

// Cyclic projections x <- P_{C_n}(x), n = 1..N, repeated `cycles` times.
PocsResult pocs_run(const GameInstance& inst, const Point& x0, std::size_t cycles);

// sqrt(sum_n ||p_n - mu||^2) with mu the coordinatewise mean.
double consensus_metric(const StrategyProfile& p);

// Coordinatewise mean of all strategies.
Point mean_point(const StrategyProfile& p);

struct TraceEntry {
  std::size_t t = 0;
  double consensus_metric = 0.0;
  double potential = 0.0;
  std::vector<NodeId> updated;
};

enum class StopReason { threshold, fixed_point, max_iters };
std::string_view to_string(StopReason reason);

struct InvariantViolations {
  std::size_t independence = 0;  // adjacent DGTC winners in the same round
  std::size_t monotonicity = 0;  // DGTC potential decreased by more than tolerance
  std::size_t feasibility = 0;   // some p_n left C_n
  std::size_t total() const { return independence + monotonicity + feasibility; }
};

struct Trace {
  Algorithm algorithm = Algorithm::dgtc;
  std::vector<TraceEntry> entries;  // entries[i].t == i; entries[0] is the initial profile
  StrategyProfile final_profile;
  bool converged = false;
  StopReason reason = StopReason::max_iters;
  std::size_t iterations_used = 0;
  double step_size = 0.0;
  InvariantViolations violations;
  std::vector<std::string> warnings;
};

struct RunOptions {
  std::size_t max_iters = 0;  // 0 selects 100 * N
  double threshold = 1e-5;
  bool check_invariants = true;
  bool record_updates = true;
  Tolerances tolerances{};
};

// Iterates rounds until consensus_metric <= threshold, a DGTC fixed point
// (every m_n <= tolerances.fixed_point_metric), or max_iters rounds.
Trace run(const EngineState& state, Algorithm algo, const RunOptions& options = {});

}  // namespace pgcc
