#include "pgcc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pgcc/errors.hpp"
#include "pgcc/kernels.hpp"

namespace pgcc {

std::string_view to_string(Algorithm algo) { return algo == Algorithm::dgtc ? "dgtc" : "dgpc"; }

Algorithm parse_algorithm(std::string_view name) {
  if (name == "dgtc") return Algorithm::dgtc;
  if (name == "dgpc") return Algorithm::dgpc;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::threshold: return "threshold";
    case StopReason::fixed_point: return "fixed_point";
    case StopReason::max_iters: return "max_iters";
  }
  return "unknown";
}

StrategyProfile initialize(const GameInstance& inst) {
  StrategyProfile p(inst.nodes(), inst.dim());
  for (std::size_t n = 0; n < inst.nodes(); ++n) {
    const auto out = p.node(n);
    if (inst.layout()) {
      const auto anchor = inst.layout()->positions[n].coords();
      inst.set(n).project_into(anchor, out);
    } else {
      inst.set(n).project_into(out, out);  // anchor at the origin
    }
  }
  return p;
}

EngineState make_state(std::shared_ptr<const GameInstance> instance) {
  if (!instance) throw std::invalid_argument("make_state: null instance");
  EngineState s;
  s.profile = initialize(*instance);
  s.step_size = instance->graph().edge_count() > 0 ? default_step_size(*instance) : 0.0;
  s.instance = std::move(instance);
  return s;
}

DgtcRoundResult dgtc_round(const EngineState& state) {
  const GameInstance& inst = *state.instance;
  const Graph& g = inst.graph();
  const StrategyProfile& prev = state.profile;
  inst.require_matches(prev);
  const std::size_t nodes = inst.nodes();
  const std::size_t q = inst.dim();

  // Lines 3-6: best responses and update lengths from round-start values.
  StrategyProfile responses(nodes, q);
  DgtcRoundResult out;
  out.metrics.assign(nodes, 0.0);
  for (std::size_t n = 0; n < nodes; ++n) {
    const auto nb = g.neighbors(n);
    if (nb.empty()) throw DegenerateNode(n);
    const auto r = responses.node(n);
    for (NodeId k : nb) {
      const auto pk = prev.node(k);
      for (std::size_t j = 0; j < q; ++j) r[j] += pk[j];
    }
    const double inv = 1.0 / static_cast<double>(nb.size());
    for (std::size_t j = 0; j < q; ++j) r[j] *= inv;
    inst.set(n).project_into(r, r);
    out.metrics[n] = kernels::squared_distance(r, prev.node(n));
  }
  out.max_metric = *std::max_element(out.metrics.begin(), out.metrics.end());

  // Lines 7-14: local winner selection.
  out.state = state;
  out.state.t = state.t + 1;
  for (std::size_t n = 0; n < nodes; ++n) {
    double best = -1.0;
    NodeId best_id = 0;
    for (NodeId k : g.neighbors(n)) {  // ascending ids, so ties keep the largest
      if (out.metrics[k] >= best) {
        best = out.metrics[k];
        best_id = k;
      }
    }
    const double mine = out.metrics[n];
    const bool wins = mine > best || (mine == best && n > best_id);
    if (wins) {
      const auto r = responses.node(n);
      std::copy(r.begin(), r.end(), out.state.profile.node(n).begin());
      out.updated.push_back(static_cast<NodeId>(n));
    }
  }
  return out;
}

StepSizeStatus check_step_size(const GameInstance& inst, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) return StepSizeStatus::nonpositive;
  if (step >= max_step_size(inst)) return StepSizeStatus::above_bound;
  return StepSizeStatus::ok;
}

EngineState dgpc_round(const EngineState& state) {
  const GameInstance& inst = *state.instance;
  const Graph& g = inst.graph();
  const StrategyProfile& prev = state.profile;
  inst.require_matches(prev);
  const double s = state.step_size;
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("dgpc_round: step size must be positive");
  const std::size_t q = inst.dim();
  const double two_s = 2.0 * s;

  EngineState next = state;
  next.t = state.t + 1;
  std::vector<double> acc(q);
  for (std::size_t n = 0; n < inst.nodes(); ++n) {
    const auto pn = prev.node(n);
    std::fill(acc.begin(), acc.end(), 0.0);
    for (NodeId k : g.neighbors(n)) {
      const auto pk = prev.node(k);
      for (std::size_t j = 0; j < q; ++j) acc[j] += pn[j] - pk[j];
    }
    const auto u = next.profile.node(n);
    for (std::size_t j = 0; j < q; ++j) u[j] = pn[j] - two_s * acc[j];
    inst.set(n).project_into(u, u);
  }
  return next;
}

PocsResult pocs_run(const GameInstance& inst, const Point& x0, std::size_t cycles) {
  require_same_dim(inst.dim(), x0.dim(), "pocs_run");
  PocsResult out{x0, {}};
  out.displacements.reserve(cycles);
  Point start(x0.dim());
  for (std::size_t c = 0; c < cycles; ++c) {
    start = out.point;
    for (std::size_t n = 0; n < inst.nodes(); ++n) inst.set(n).project_into(out.point.coords(), out.point.coords());
    out.displacements.push_back(distance(out.point, start));
  }
  return out;
}

Point mean_point(const StrategyProfile& p) {
  Point mu(p.dim());
  if (p.nodes() == 0) return mu;
  kernels::active().column_sums(p.flat().data(), p.nodes(), p.dim(), mu.data());
  const double inv = 1.0 / static_cast<double>(p.nodes());
  for (std::size_t j = 0; j < mu.dim(); ++j) mu[j] *= inv;
  return mu;
}

double consensus_metric(const StrategyProfile& p) {
  if (p.nodes() == 0) return 0.0;
  const Point mu = mean_point(p);
  return std::sqrt(
      kernels::active().sum_squared_deviation(p.flat().data(), p.nodes(), p.dim(), mu.data()));
}

namespace {

bool winners_independent(const Graph& g, const std::vector<NodeId>& winners,
                         std::vector<char>& mark) {
  bool ok = true;
  for (NodeId n : winners) mark[n] = 1;
  for (NodeId n : winners) {
    for (NodeId k : g.neighbors(n)) {
      if (mark[k]) ok = false;
    }
  }
  for (NodeId n : winners) mark[n] = 0;
  return ok;
}

}  // namespace

Trace run(const EngineState& initial, Algorithm algo, const RunOptions& options) {
  const GameInstance& inst = *initial.instance;
  const Tolerances& tol = options.tolerances;
  const std::size_t max_iters = options.max_iters == 0 ? 100 * inst.nodes() : options.max_iters;

  Trace trace;
  trace.algorithm = algo;
  trace.step_size = algo == Algorithm::dgpc ? initial.step_size : 0.0;
  if (algo == Algorithm::dgpc) {
    switch (check_step_size(inst, initial.step_size)) {
      case StepSizeStatus::ok: break;
      case StepSizeStatus::nonpositive:
        throw std::invalid_argument("run: DGPC step size must be positive");
      case StepSizeStatus::above_bound:
        trace.warnings.push_back("step size " + std::to_string(initial.step_size) +
                                 " is not below the convergence bound " +
                                 std::to_string(max_step_size(inst)));
        break;
    }
  }

  EngineState state = initial;
  double metric = consensus_metric(state.profile);
  double phi = potential(inst, state.profile);
  trace.entries.push_back({state.t, metric, phi, {}});
  std::vector<char> mark(inst.nodes(), 0);

  while (true) {
    if (metric <= options.threshold) {
      trace.converged = true;
      trace.reason = StopReason::threshold;
      break;
    }
    if (state.t - initial.t >= max_iters) {
      trace.reason = StopReason::max_iters;
      break;
    }

    std::vector<NodeId> updated;
    if (algo == Algorithm::dgtc) {
      DgtcRoundResult round = dgtc_round(state);
      if (round.max_metric <= tol.fixed_point_metric) {
        trace.converged = true;
        trace.reason = StopReason::fixed_point;
        break;
      }
      if (options.check_invariants && !winners_independent(inst.graph(), round.updated, mark)) {
        ++trace.violations.independence;
      }
      state = std::move(round.state);
      updated = std::move(round.updated);
    } else {
      EngineState next = dgpc_round(state);
      if (options.record_updates) {
        for (std::size_t n = 0; n < inst.nodes(); ++n) {
          const auto a = next.profile.node(n);
          const auto b = state.profile.node(n);
          if (!std::equal(a.begin(), a.end(), b.begin())) updated.push_back(static_cast<NodeId>(n));
        }
      }
      state = std::move(next);
    }

    const double next_phi = potential(inst, state.profile);
    if (options.check_invariants) {
      if (algo == Algorithm::dgtc && next_phi < phi - tol.potential_monotone) ++trace.violations.monotonicity;
      if (max_infeasibility(inst, state.profile) > tol.feasibility) ++trace.violations.feasibility;
    }
    phi = next_phi;
    metric = consensus_metric(state.profile);
    if (!options.record_updates) updated.clear();
    trace.entries.push_back({state.t, metric, phi, std::move(updated)});
  }

  trace.iterations_used = state.t - initial.t;
  trace.final_profile = std::move(state.profile);
  return trace;
}

}  // namespace pgcc
