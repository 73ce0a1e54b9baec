#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>

#include "oracles.hpp"
#include "pgcc/engine.hpp"
#include "pgcc/experiments.hpp"
#include "pgcc/rng.hpp"

using namespace pgcc;

namespace {

// Edge 1-2 with C_1 = [-2, 1] and C_2 = [0, 3].
std::shared_ptr<const GameInstance> two_intervals() {
  std::vector<ConvexSet> sets = {Box({-2.0}, {1.0}), Box({0.0}, {3.0})};
  return std::make_shared<const GameInstance>(Graph::complete(2), sets);
}

EngineState state_at(std::shared_ptr<const GameInstance> inst, std::vector<double> flat, double step = 0.0) {
  EngineState s;
  const std::size_t n = inst->nodes(), q = inst->dim();
  s.instance = std::move(inst);
  s.profile = StrategyProfile(n, q, std::move(flat));
  s.step_size = step;
  return s;
}

}  // namespace

TEST_CASE("DGTC hand trace on two intervals") {
  const EngineState s0 = state_at(two_intervals(), {-2, 3});
  const DgtcRoundResult r1 = dgtc_round(s0);
  CHECK(r1.metrics == std::vector<double>{9.0, 9.0});
  CHECK(r1.updated == std::vector<NodeId>{1});
  CHECK(r1.state.profile.flat()[0] == -2.0);
  CHECK(r1.state.profile.flat()[1] == 0.0);
  CHECK(r1.state.t == 1);

  const DgtcRoundResult r2 = dgtc_round(r1.state);
  CHECK(r2.metrics == std::vector<double>{4.0, 0.0});
  CHECK(r2.updated == std::vector<NodeId>{0});
  CHECK(r2.state.profile.flat()[0] == 0.0);
  CHECK(r2.state.profile.flat()[1] == 0.0);

  const DgtcRoundResult r3 = dgtc_round(r2.state);
  CHECK(r3.max_metric == 0.0);
  CHECK(r3.state.profile == r2.state.profile);
}

TEST_CASE("DGTC run reaches consensus by t = 2") {
  RunOptions opts;
  opts.threshold = 1e-12;
  const Trace tr = run(state_at(two_intervals(), {-2, 3}), Algorithm::dgtc, opts);
  CHECK(tr.converged);
  CHECK(tr.iterations_used == 2);
  CHECK(tr.entries.size() == 3);
  CHECK(tr.entries[1].updated == std::vector<NodeId>{1});
  CHECK(tr.entries[2].consensus_metric == 0.0);
  CHECK(tr.violations.total() == 0);
  for (std::size_t i = 1; i < tr.entries.size(); ++i) CHECK(tr.entries[i].potential >= tr.entries[i - 1].potential);
}

TEST_CASE("DGTC fixed point stops the run") {
  std::vector<ConvexSet> sets = {Box({0.0}, {1.0}), Box({2.0}, {3.0})};
  // Disjoint sets: the profile settles at (1, 2) with consensus metric > 0.
  auto inst = std::make_shared<const GameInstance>(Graph::complete(2), sets);
  RunOptions opts;
  opts.threshold = 1e-12;
  const Trace tr = run(state_at(inst, {0, 3}), Algorithm::dgtc, opts);
  CHECK(tr.reason == StopReason::fixed_point);
  CHECK(tr.final_profile.flat()[0] == 1.0);
  CHECK(tr.final_profile.flat()[1] == 2.0);
  CHECK(tr.iterations_used < 10);
}

TEST_CASE("DGPC hand evaluation") {
  const EngineState s1 = dgpc_round(state_at(two_intervals(), {-2, 3}, 0.1));
  CHECK(s1.profile.flat()[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(s1.profile.flat()[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s1.t == 1);

  const EngineState still = dgpc_round(state_at(two_intervals(), {0.5, 0.5}, 0.1));
  CHECK(still.profile.flat()[0] == 0.5);
  CHECK(still.profile.flat()[1] == 0.5);

  CHECK_THROWS_AS(dgpc_round(state_at(two_intervals(), {0, 0}, 0.0)), std::invalid_argument);
  CHECK(check_step_size(*two_intervals(), 0.1) == StepSizeStatus::ok);
  CHECK(check_step_size(*two_intervals(), 1.0) == StepSizeStatus::above_bound);
  CHECK(check_step_size(*two_intervals(), -1.0) == StepSizeStatus::nonpositive);
}

TEST_CASE("DGPC above the step bound warns") {
  const Trace tr = run(state_at(two_intervals(), {-2, 3}, 0.5), Algorithm::dgpc, RunOptions{});
  CHECK_FALSE(tr.warnings.empty());
}

TEST_CASE("POCS hand trace") {
  const PocsResult r = pocs_run(*two_intervals(), Point{-2.0}, 5);
  CHECK(r.point == Point{0.0});
  REQUIRE(r.displacements.size() == 5);
  CHECK(r.displacements[0] == 2.0);
  for (std::size_t c = 1; c < 5; ++c) CHECK(r.displacements[c] == 0.0);
  const PocsResult inside = pocs_run(*two_intervals(), Point{0.5}, 3);
  CHECK(inside.point == Point{0.5});
}

TEST_CASE("consensus metric") {
  CHECK(consensus_metric(StrategyProfile(4, 3, std::vector<double>(12, 1.5))) == 0.0);
  CHECK(consensus_metric(StrategyProfile(2, 1, {0, 2})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  Rng rng(3);
  StrategyProfile p(7, 3);
  for (double& x : p.flat()) x = rng.uniform(-1.0, 1.0);
  StrategyProfile shifted = p;
  for (std::size_t n = 0; n < 7; ++n)
    for (std::size_t j = 0; j < 3; ++j) shifted.node(n)[j] += 1000.0 * static_cast<double>(j + 1);
  CHECK(consensus_metric(shifted) == doctest::Approx(consensus_metric(p)).epsilon(1e-9));
}

TEST_CASE("initialization") {
  std::vector<ConvexSet> sets = {Ball({5, 5}, 1), Ball({0.5, 0.5}, 1)};
  const GameInstance inst(Graph::complete(2), sets);
  const StrategyProfile p = initialize(inst);
  CHECK(p.node(0)[0] == doctest::Approx(5.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(p.node(0)[1] == doctest::Approx(5.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(p.node(1)[0] == 0.0);
  CHECK(p.node(1)[1] == 0.0);
  CHECK(initialize(inst) == p);
}

TEST_CASE("infinite threshold runs zero rounds") {
  RunOptions opts;
  opts.threshold = std::numeric_limits<double>::infinity();
  for (Algorithm a : {Algorithm::dgtc, Algorithm::dgpc}) {
    const Trace tr = run(make_state(two_intervals()), a, opts);
    CHECK(tr.converged);
    CHECK(tr.iterations_used == 0);
    CHECK(tr.entries.size() == 1);
  }
}

TEST_CASE("algorithm names") {
  CHECK(parse_algorithm("dgtc") == Algorithm::dgtc);
  CHECK(parse_algorithm("dgpc") == Algorithm::dgpc);
  CHECK(to_string(Algorithm::dgpc) == "dgpc");
  CHECK_THROWS_AS(parse_algorithm("pocs"), std::invalid_argument);
}

TEST_CASE("DGPC distributed round equals the centralized oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const FeasibleInstance fi = random_feasible_instance(rng.next(), 2 + rng.below(15), 1 + rng.below(4));
    EngineState s = make_state(fi.game);
    for (double& x : s.profile.flat()) x = rng.uniform(-2.0, 2.0);
    for (int round = 0; round < 5; ++round) {
      const auto expected = oracle::centralized_gradient_step(*fi.game, s.profile, s.step_size);
      s = dgpc_round(s);
      for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::fabs(s.profile.flat()[i] - expected[i]) <= 1e-12);
    }
  }
}

TEST_CASE("engine invariants on random feasible instances") {
  Rng rng(32);
  for (int trial = 0; trial < 25; ++trial) {
    const FeasibleInstance fi = random_feasible_instance(rng.next(), 3 + rng.below(12), 1 + rng.below(3));
    RunOptions opts;
    opts.threshold = 1e-9;
    opts.max_iters = 5000;
    for (Algorithm a : {Algorithm::dgtc, Algorithm::dgpc}) {
      const Trace tr = run(make_state(fi.game), a, opts);
      CHECK(tr.violations.total() == 0);
      CHECK(tr.entries.size() == tr.iterations_used + 1);
      if (a == Algorithm::dgtc) {
        for (const auto& e : tr.entries) {
          for (std::size_t i = 0; i < e.updated.size(); ++i)
            for (std::size_t k = i + 1; k < e.updated.size(); ++k)
              CHECK_FALSE(fi.game->graph().has_edge(e.updated[i], e.updated[k]));
        }
      }
      CHECK(max_infeasibility(*fi.game, tr.final_profile) <= 1e-9);
      CHECK(tr.converged);
    }
  }
}
