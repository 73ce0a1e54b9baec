#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pgcc/errors.hpp"
#include "pgcc/experiments.hpp"

using namespace pgcc;

TEST_CASE("localization ball radius") {
  const Ball b = localization_ball({0, 0}, {0.3, 0.4}, 0.01);
  CHECK(b.radius() == doctest::Approx(0.51).epsilon(1e-15));
  CHECK(b.center() == Point{0, 0});
}

TEST_CASE("localization instances") {
  const LocalizationInstance inst = make_localization_instance(100, 2, 0.3, 0.01, 9);
  CHECK(is_connected(inst.graph()));
  CHECK(inst.attempts >= 1);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(inst.source[j] >= 0.25);
    CHECK(inst.source[j] <= 0.75);
  }
  for (std::size_t n = 0; n < 100; ++n) CHECK(inst.game->set(n).contains(inst.source, 0.0));

  const LocalizationInstance again = make_localization_instance(100, 2, 0.3, 0.01, 9);
  CHECK(again.graph() == inst.graph());
  CHECK(again.source == inst.source);
  CHECK(again.sub_seed == inst.sub_seed);

  CHECK_THROWS_AS(make_localization_instance(50, 2, 0.3, 0.0, 1), std::invalid_argument);
  try {
    make_localization_instance(60, 2, 0.01, 0.01, 1, 3);
    FAIL("expected a generation error");
  } catch (const InstanceGenerationError& e) {
    CHECK(e.attempts() == 3);
  }
}

TEST_CASE("random feasible instances contain their common point") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const FeasibleInstance fi = random_feasible_instance(seed, 2 + seed % 9, 1 + seed % 4);
    CHECK(is_connected(fi.game->graph()));
    for (const auto& c : fi.game->sets()) CHECK(c.contains(fi.common_point, 0.0));
  }
}

TEST_CASE("median helpers") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  CHECK(std::isnan(median({})));

  Trace a, b;
  a.entries = {{0, 4.0, 0, {}}, {1, 2.0, 0, {}}, {2, 1.0, 0, {}}};
  b.entries = {{0, 6.0, 0, {}}, {1, 0.5, 0, {}}};
  // shorter traces hold their last value
  CHECK(median_curve({&a, &b}) == std::vector<double>{5.0, 1.25, 0.75});
}

TEST_CASE("small validation study is deterministic and converges") {
  ValidationParams p;
  p.n = 30;
  p.rho = 0.4;
  p.trials = 2;
  p.pocs_cycles = 10;
  p.max_iters = 100000;
  p.base_seed = 5;
  const ValidationResult r1 = validation_study(p);
  p.threads = 2;
  const ValidationResult r2 = validation_study(p);
  REQUIRE(r1.trials.size() == 2);
  for (const auto& tr : r1.trials) {
    CHECK(tr.dgtc.converged);
    CHECK(tr.dgpc.converged);
    CHECK(tr.fiedler > 0.0);
    CHECK(tr.pocs.displacements.size() == 10);
  }
  std::ostringstream a, b;
  write_validation_csv(a, r1);
  write_validation_csv(b, r2);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("algo,trial,seed,t,consensus_metric,potential\n", 0) == 0);

  std::ostringstream m;
  write_median_csv(m, r1);
  CHECK(m.str().rfind("algo,t,median_consensus_metric\n", 0) == 0);
  std::ostringstream t;
  write_trace_csv(t, r1.trials[0].dgtc);
  CHECK(t.str().rfind("t,consensus_metric,potential,num_updated\n0,", 0) == 0);
}

TEST_CASE("small sweep") {
  SweepParams p;
  p.n = 25;
  p.rho_min = 0.3;
  p.rho_max = 0.5;
  p.realizations = 4;
  p.max_iters = 2500;
  p.base_seed = 3;
  const SweepResult r = rate_sweep(p);
  REQUIRE(r.records.size() == 4);
  CHECK(r.candidates >= 4);
  for (const auto& rec : r.records) {
    CHECK(rec.rho >= 0.3);
    CHECK(rec.rho <= 0.5);
    CHECK(rec.fiedler > 0.0);
    if (rec.conv_dgtc) CHECK(rec.iters_dgtc <= 2500);
    if (rec.conv_dgpc) CHECK(rec.iters_dgpc <= 2500);
  }
  p.threads = 3;
  const SweepResult again = rate_sweep(p);
  std::ostringstream a, b;
  write_sweep_csv(a, r.records);
  write_sweep_csv(b, again.records);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("trial,seed,rho,fiedler,iters_dgtc,conv_dgtc,iters_dgpc,conv_dgpc\n", 0) == 0);

  const SweepSummary s = summarize_sweep(r.records, 1e9);
  CHECK(s.below.count == 4);
  CHECK(s.above.count == 0);
  CHECK(default_fiedler_cut(2) == 3.0);
  CHECK(default_fiedler_cut(4) == 7.0);
}
