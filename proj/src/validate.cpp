#include "pgcc/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "pgcc/csv.hpp"
#include "pgcc/engine.hpp"
#include "pgcc/experiments.hpp"
#include "pgcc/rng.hpp"

namespace pgcc {
namespace {

class Check {
 public:
  Check(std::string suite, std::string name) { result_.suite = std::move(suite); result_.name = std::move(name); }

  void expect(bool ok, const std::function<std::string()>& describe) {
    ++result_.cases;
    if (ok) return;
    if (result_.failures++ == 0) result_.detail = describe();
  }

  CheckResult done() { return std::move(result_); }

 private:
  CheckResult result_;
};

bool rel_close(double a, double b, double rel) {
  const double diff = std::fabs(a - b);
  return diff <= rel * std::max(std::fabs(a), std::fabs(b)) || diff <= 1e-14;
}

ConvexSet random_set(Rng& rng, std::size_t q) {
  switch (rng.below(3)) {
    case 0: {
      Point c(q);
      for (std::size_t j = 0; j < q; ++j) c[j] = rng.uniform(-2.0, 2.0);
      const double r = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.0, 2.0);
      return Ball(c, r);
    }
    case 1: {
      Point lo(q), hi(q);
      for (std::size_t j = 0; j < q; ++j) {
        lo[j] = rng.uniform(-2.0, 1.0);
        hi[j] = lo[j] + rng.uniform(0.0, 2.0);
      }
      return Box(lo, hi);
    }
    default: {
      Point a(q);
      do {
        for (std::size_t j = 0; j < q; ++j) a[j] = rng.uniform(-1.0, 1.0);
      } while (norm(a) < 0.1);
      return Halfspace(a, rng.uniform(-1.0, 1.0));
    }
  }
}

Point random_point(Rng& rng, std::size_t q, double spread) {
  Point p(q);
  for (std::size_t j = 0; j < q; ++j) p[j] = rng.uniform(-spread, spread);
  return p;
}

// Rejection sampling in a box of half-width `spread` around `around`; falls
// back to projecting the last draw after 100 rejections.
Point sample_in_set(Rng& rng, const ConvexSet& set, const Point& around, double spread) {
  Point x(around.dim());
  for (int attempt = 0; attempt < 100; ++attempt) {
    for (std::size_t j = 0; j < x.dim(); ++j) x[j] = around[j] + rng.uniform(-spread, spread);
    if (set.contains(x, 0.0)) return x;
  }
  return set.project(x);
}

StrategyProfile feasible_profile(Rng& rng, const GameInstance& inst, const Point& around) {
  StrategyProfile p(inst.nodes(), inst.dim());
  for (std::size_t n = 0; n < inst.nodes(); ++n) {
    const Point x = sample_in_set(rng, inst.set(n), around, 1.0);
    std::copy(x.coords().begin(), x.coords().end(), p.node(n).begin());
  }
  return p;
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------- sets

std::vector<CheckResult> sets_suite(const ValidateOptions& o) {
  Rng rng(derive_seed(o.seed, 1));
  const Tolerances& tol = o.tolerances;
  Check idem("sets", "projection idempotence"), nonexp("sets", "projection nonexpansive"),
      member("sets", "projection membership"), vi("sets", "variational inequality"),
      record("sets", "record round trip");
  for (int i = 0; i < 500; ++i) {
    const std::size_t q = 1 + rng.below(4);
    const ConvexSet set = random_set(rng, q);
    const Point x = random_point(rng, q, 4.0);
    const Point y = random_point(rng, q, 4.0);
    const Point px = set.project(x);
    const Point py = set.project(y);
    const Point ppx = set.project(px);
    double worst = 0.0;
    for (std::size_t j = 0; j < q; ++j) worst = std::max(worst, std::fabs(ppx[j] - px[j]));
    idem.expect(worst <= tol.projection, [&] { return to_record(set) + ": moved by " + fmt(worst); });
    nonexp.expect(distance(px, py) <= distance(x, y) + tol.projection,
                  [&] { return to_record(set) + ": expansion"; });
    member.expect(set.contains(px, tol.feasibility), [&] { return to_record(set) + ": projection outside"; });
    const Point z = set.project(random_point(rng, q, 4.0));
    double inner = 0.0;
    for (std::size_t j = 0; j < q; ++j) inner += (x[j] - px[j]) * (z[j] - px[j]);
    vi.expect(inner <= tol.variational, [&] { return to_record(set) + ": inner product " + fmt(inner); });
    record.expect(parse_set_record(to_record(set)) == set, [&] { return to_record(set); });
  }
  return {idem.done(), nonexp.done(), member.done(), vi.done(), record.done()};
}

// ---------------------------------------------------------------- graph

Graph random_graph(Rng& rng, std::size_t n, double p) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId k = i + 1; k < n; ++k)
      if (rng.uniform() < p) edges.emplace_back(i, k);
  return Graph::from_edges(n, edges);
}

std::vector<CheckResult> graph_suite(const ValidateOptions& o) {
  Rng rng(derive_seed(o.seed, 2));
  Check conn("graph", "fiedler positive iff connected"), rows("graph", "laplacian row sums zero"),
      trace("graph", "eigenvalue sum equals laplacian trace"), rgg("graph", "geometric edges symmetric, irreflexive, within range"),
      det("graph", "generator determinism");
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng.below(19);
    const Graph g = random_graph(rng, n, rng.uniform(0.02, 0.5));
    const double f = fiedler_value(g);
    conn.expect((f > 1e-9) == is_connected(g), [&] { return "n=" + std::to_string(n) + " fiedler " + fmt(f); });
    const SymmetricMatrix l = laplacian(g);
    bool zero = true;
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < n; ++c) s += l(r, c);
      zero = zero && s == 0.0;
    }
    rows.expect(zero, [] { return std::string("nonzero row sum"); });
    const JacobiResult jr = jacobi_eigenvalues(l);
    double sum = 0.0;
    for (double ev : jr.eigenvalues) sum += ev;
    const double expected = 2.0 * static_cast<double>(g.edge_count());
    trace.expect(std::fabs(sum - expected) <= 1e-9 * std::max(1.0, expected),
                 [&] { return fmt(sum) + " vs " + fmt(expected); });
  }
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 2 + rng.below(40);
    const std::size_t q = 1 + rng.below(4);
    const double rho = rng.uniform(0.05, 0.8);
    const std::uint64_t seed = rng.next();
    const GeometricGraph gg = generate_rgg(n, q, rho, seed);
    bool ok = true;
    for (std::size_t a = 0; a < n; ++a) {
      ok = ok && !gg.graph.has_edge(a, a);
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        ok = ok && gg.graph.has_edge(a, b) == gg.graph.has_edge(b, a);
        ok = ok && gg.graph.has_edge(a, b) == (distance(gg.layout.positions[a], gg.layout.positions[b]) <= rho);
      }
    }
    rgg.expect(ok, [&] { return "seed " + std::to_string(seed); });
    const GeometricGraph again = generate_rgg(n, q, rho, seed);
    det.expect(again.graph == gg.graph && again.layout == gg.layout, [&] { return "seed " + std::to_string(seed); });
  }
  return {conn.done(), rows.done(), trace.done(), rgg.done(), det.done()};
}

// ---------------------------------------------------------------- potential

std::vector<CheckResult> potential_suite(const ValidateOptions& o) {
  Rng rng(derive_seed(o.seed, 3));
  const Tolerances& tol = o.tolerances;
  Check single("potential", "exact potential (single deviator)"),
      indep("potential", "exact potential (independent set)"), block("potential", "gradient block identity"),
      fd("potential", "cost gradient vs finite differences"), br("potential", "best response optimality"),
      lip("potential", "Lipschitz bound"), concave("potential", "potential concavity");

  auto instance = [&] {
    const std::size_t nodes = 2 + rng.below(9);
    const std::size_t q = 1 + rng.below(4);
    return random_feasible_instance(rng.next(), nodes, q, rng.uniform(0.0, 0.6));
  };

  for (int i = 0; i < 1000; ++i) {
    const FeasibleInstance fi = instance();
    const GameInstance& inst = *fi.game;
    StrategyProfile p1 = feasible_profile(rng, inst, fi.common_point);
    const std::size_t n = rng.below(inst.nodes());
    StrategyProfile p2 = p1;
    const Point x = sample_in_set(rng, inst.set(n), fi.common_point, 1.0);
    std::copy(x.coords().begin(), x.coords().end(), p2.node(n).begin());
    const double dphi = potential(inst, p2) - potential(inst, p1);
    const double du = utility(inst, p2, n) - utility(inst, p1, n);
    single.expect(rel_close(dphi, du, tol.exact_potential_rel), [&] { return fmt(dphi) + " vs " + fmt(du); });
  }

  for (int i = 0; i < 200; ++i) {
    const FeasibleInstance fi = instance();
    const GameInstance& inst = *fi.game;
    const Graph& g = inst.graph();
    StrategyProfile p1 = feasible_profile(rng, inst, fi.common_point);
    std::vector<std::size_t> order(inst.nodes());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);
    std::vector<std::size_t> chosen;
    for (std::size_t n : order) {
      const bool free = std::none_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return g.has_edge(c, n); });
      if (free && (chosen.empty() || rng.uniform() < 0.7)) chosen.push_back(n);
    }
    StrategyProfile p2 = p1;
    for (std::size_t n : chosen) {
      const Point x = sample_in_set(rng, inst.set(n), fi.common_point, 1.0);
      std::copy(x.coords().begin(), x.coords().end(), p2.node(n).begin());
    }
    const double dphi = potential(inst, p2) - potential(inst, p1);
    double du = 0.0;
    for (std::size_t n : chosen) du += utility(inst, p2, n) - utility(inst, p1, n);
    indep.expect(rel_close(dphi, du, tol.exact_potential_rel), [&] { return fmt(dphi) + " vs " + fmt(du); });
  }

  for (int i = 0; i < 100; ++i) {
    const FeasibleInstance fi = instance();
    const GameInstance& inst = *fi.game;
    StrategyProfile p = feasible_profile(rng, inst, fi.common_point);
    const std::vector<double> grad = cost_gradient(inst, p);
    bool exact = true;
    for (std::size_t n = 0; n < inst.nodes(); ++n) {
      const Point gu = utility_gradient(inst, p, n);
      for (std::size_t j = 0; j < inst.dim(); ++j) exact = exact && gu[j] == -grad[n * inst.dim() + j];
    }
    block.expect(exact, [] { return std::string("utility gradient differs from -cost gradient block"); });

    const double h = tol.finite_difference_step;
    double err = 0.0, ref = 0.0;
    for (std::size_t i2 = 0; i2 < grad.size(); ++i2) {
      StrategyProfile plus = p, minus = p;
      plus.flat()[i2] += h;
      minus.flat()[i2] -= h;
      const double d = (-potential(inst, plus) + potential(inst, minus)) / (2.0 * h);
      err += (d - grad[i2]) * (d - grad[i2]);
      ref += grad[i2] * grad[i2];
    }
    const double rel = std::sqrt(err) / std::max(std::sqrt(ref), 1e-12);
    fd.expect(rel < tol.finite_difference_rel, [&] { return "relative error " + fmt(rel); });
  }

  for (int i = 0; i < 100; ++i) {
    const FeasibleInstance fi = instance();
    const GameInstance& inst = *fi.game;
    StrategyProfile p = feasible_profile(rng, inst, fi.common_point);
    const std::size_t n = rng.below(inst.nodes());
    const Point r = best_response(inst, p, n);
    StrategyProfile at_br = p;
    std::copy(r.coords().begin(), r.coords().end(), at_br.node(n).begin());
    const double u_best = utility(inst, at_br, n);
    double worst_gain = -INFINITY;
    for (int c = 0; c < 1000; ++c) {
      const Point y = sample_in_set(rng, inst.set(n), r, 1.0);
      std::copy(y.coords().begin(), y.coords().end(), at_br.node(n).begin());
      worst_gain = std::max(worst_gain, utility(inst, at_br, n) - u_best);
    }
    br.expect(worst_gain <= tol.best_response, [&] { return "candidate beats best response by " + fmt(worst_gain); });
  }

  for (int i = 0; i < 20; ++i) {
    const FeasibleInstance fi = instance();
    const GameInstance& inst = *fi.game;
    const double l = lipschitz_constant(inst);
    for (int k = 0; k < 50; ++k) {
      StrategyProfile x(inst.nodes(), inst.dim()), y(inst.nodes(), inst.dim());
      for (double& v : x.flat()) v = rng.uniform(-1.0, 1.0);
      for (double& v : y.flat()) v = rng.uniform(-1.0, 1.0);
      const std::vector<double> gx = cost_gradient(inst, x), gy = cost_gradient(inst, y);
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < gx.size(); ++j) {
        num += (gx[j] - gy[j]) * (gx[j] - gy[j]);
        den += (x.flat()[j] - y.flat()[j]) * (x.flat()[j] - y.flat()[j]);
      }
      lip.expect(std::sqrt(num) <= l * std::sqrt(den) + tol.lipschitz,
                 [&] { return fmt(std::sqrt(num)) + " > " + fmt(l * std::sqrt(den)); });
    }
  }

  for (int i = 0; i < 200; ++i) {
    const FeasibleInstance fi = instance();
    const GameInstance& inst = *fi.game;
    const StrategyProfile x = feasible_profile(rng, inst, fi.common_point);
    const StrategyProfile y = feasible_profile(rng, inst, fi.common_point);
    const double lambda = rng.uniform();
    StrategyProfile mix = x;
    for (std::size_t j = 0; j < mix.flat().size(); ++j) mix.flat()[j] = lambda * x.flat()[j] + (1.0 - lambda) * y.flat()[j];
    const double lhs = potential(inst, mix);
    const double rhs = lambda * potential(inst, x) + (1.0 - lambda) * potential(inst, y);
    concave.expect(lhs >= rhs - tol.concavity, [&] { return fmt(lhs) + " < " + fmt(rhs); });
  }

  return {single.done(), indep.done(), block.done(), fd.done(), br.done(), lip.done(), concave.done()};
}

// ---------------------------------------------------------------- engine

std::vector<CheckResult> engine_suite(const ValidateOptions& o) {
  Rng rng(derive_seed(o.seed, 4));
  const Tolerances& tol = o.tolerances;
  Check indep("engine", "DGTC winners form an independent set"), mono("engine", "DGTC potential non-decreasing"),
      feas("engine", "feasibility after every round"), equiv("engine", "DGPC distributed equals stacked update"),
      descent("engine", "DGPC cost non-increasing"), fixed("engine", "DGTC fixed point implies consensus"),
      near("engine", "mean point within consensus metric of every set"), pocs("engine", "POCS displacement decays to zero");

  for (int i = 0; i < 50; ++i) {
    const std::size_t nodes = 2 + rng.below(11);
    const std::size_t q = 1 + rng.below(4);
    const FeasibleInstance fi = random_feasible_instance(rng.next(), nodes, q, rng.uniform(0.0, 0.5));
    const GameInstance& inst = *fi.game;
    EngineState state = make_state(fi.game);
    state.step_size *= o.step_factor;

    RunOptions opts;
    opts.threshold = 0.0;
    opts.max_iters = 20000;
    opts.tolerances = tol;
    const Trace dgtc = run(state, Algorithm::dgtc, opts);
    indep.expect(dgtc.violations.independence == 0, [&] { return "instance " + std::to_string(i); });
    mono.expect(dgtc.violations.monotonicity == 0, [&] { return "instance " + std::to_string(i); });
    feas.expect(dgtc.violations.feasibility == 0, [&] { return "DGTC, instance " + std::to_string(i); });

    if (dgtc.reason == StopReason::fixed_point) {
      const double c = consensus_metric(dgtc.final_profile);
      fixed.expect(c <= tol.consensus_at_fixed_point, [&] { return "consensus metric " + fmt(c); });
      const Point mu = mean_point(dgtc.final_profile);
      bool ok = true;
      for (const auto& set : inst.sets()) ok = ok && set.distance_to(mu) <= c + 1e-12;
      near.expect(ok, [&] { return "instance " + std::to_string(i); });
    }

    EngineState s = state;
    double cost = -potential(inst, s.profile);
    bool same = true, descending = true, feasible = true;
    for (int round = 0; round < 200; ++round) {
      const StrategyProfile stacked = gradient_projection_step(inst, s.profile, s.step_size);
      s = dgpc_round(s);
      for (std::size_t j = 0; j < stacked.flat().size(); ++j) {
        same = same && std::fabs(stacked.flat()[j] - s.profile.flat()[j]) <= tol.equivalence;
      }
      const double next_cost = -potential(inst, s.profile);
      descending = descending && next_cost <= cost + tol.potential_monotone;
      cost = next_cost;
      feasible = feasible && max_infeasibility(inst, s.profile) <= tol.feasibility;
    }
    equiv.expect(same, [&] { return "instance " + std::to_string(i); });
    descent.expect(descending, [&] { return "instance " + std::to_string(i) + ", step " + fmt(s.step_size); });
    feas.expect(feasible, [&] { return "DGPC, instance " + std::to_string(i); });

    const PocsResult pr = pocs_run(inst, Point(inst.dim()), 200);
    bool decays = pr.displacements.back() <= 1e-9;
    for (std::size_t c = pr.displacements.size() - 10; c + 1 < pr.displacements.size(); ++c) {
      decays = decays && pr.displacements[c + 1] <= pr.displacements[c] + 1e-15;
    }
    pocs.expect(decays, [&] { return "final displacement " + fmt(pr.displacements.back()); });
  }
  return {indep.done(), mono.done(), feas.done(), equiv.done(), descent.done(), fixed.done(), near.done(), pocs.done()};
}

}  // namespace

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names = {"sets", "graph", "potential", "engine"};
  return names;
}

std::vector<CheckResult> run_suite(std::string_view suite, const ValidateOptions& options) {
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (std::string_view name : suite_names()) {
      auto part = run_suite(name, options);
      all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return all;
  }
  if (suite == "sets") return sets_suite(options);
  if (suite == "graph") return graph_suite(options);
  if (suite == "potential") return potential_suite(options);
  if (suite == "engine") return engine_suite(options);
  throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

}  // namespace pgcc
