#include "pgcc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "pgcc/csv.hpp"
#include "pgcc/errors.hpp"
#include "pgcc/rng.hpp"

namespace pgcc {
namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers. Exceptions are
// rethrown on the caller's thread (the one from the smallest index wins).
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::mutex m;
  std::size_t next = 0;
  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard lock(m);
        if (next >= count) return;
        i = next++;
      }
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::uint64_t source_seed(std::uint64_t sub_seed) { return derive_seed(sub_seed, 0x50c); }

}  // namespace

Ball localization_ball(const Point& location, const Point& source, double epsilon) {
  return Ball(location, distance(location, source) + epsilon);
}

LocalizationInstance make_localization_instance(std::size_t n, std::size_t q, double rho,
                                                double epsilon, std::uint64_t seed,
                                                std::size_t max_attempts) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("localization: epsilon must be positive");
  if (max_attempts == 0) throw std::invalid_argument("localization: max_attempts must be positive");
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    const std::uint64_t sub_seed = derive_seed(seed, attempt);
    GeometricGraph gg = generate_rgg(n, q, rho, sub_seed);
    if (!is_connected(gg.graph)) continue;

    Rng rng(source_seed(sub_seed));
    Point source(q);
    for (std::size_t j = 0; j < q; ++j) source[j] = rng.uniform(0.25, 0.75);

    std::vector<ConvexSet> sets;
    sets.reserve(n);
    for (const Point& l : gg.layout.positions) sets.emplace_back(localization_ball(l, source, epsilon));

    LocalizationInstance out;
    out.game = std::make_shared<const GameInstance>(std::move(gg.graph), std::move(sets), std::move(gg.layout));
    out.source = std::move(source);
    out.epsilon = epsilon;
    out.seed = seed;
    out.sub_seed = sub_seed;
    out.attempts = attempt + 1;
    return out;
  }
  throw InstanceGenerationError("no connected topology for n=" + std::to_string(n) + ", q=" +
                                    std::to_string(q) + ", rho=" + format_double(rho) + " after " +
                                    std::to_string(max_attempts) + " attempts",
                                max_attempts);
}

FeasibleInstance random_feasible_instance(std::uint64_t seed, std::size_t nodes, std::size_t q,
                                          double extra_edge_probability) {
  if (nodes < 2 || q < 1) throw std::invalid_argument("random_feasible_instance: need nodes >= 2, q >= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId i = 1; i < nodes; ++i) edges.emplace_back(static_cast<NodeId>(rng.below(i)), i);
  for (NodeId i = 0; i < nodes; ++i)
    for (NodeId k = i + 1; k < nodes; ++k)
      if (rng.uniform() < extra_edge_probability) edges.emplace_back(i, k);

  Point z(q);
  for (std::size_t j = 0; j < q; ++j) z[j] = rng.uniform();

  std::vector<ConvexSet> sets;
  for (std::size_t n = 0; n < nodes; ++n) {
    const double margin = rng.uniform(0.05, 0.3);
    switch (rng.below(3)) {
      case 0: {
        Point c(q);
        for (std::size_t j = 0; j < q; ++j) c[j] = z[j] + rng.uniform(-0.5, 0.5);
        sets.emplace_back(Ball(c, distance(c, z) + margin));
        break;
      }
      case 1: {
        Point lo(q), hi(q);
        for (std::size_t j = 0; j < q; ++j) {
          lo[j] = z[j] - rng.uniform(0.05, 0.5);
          hi[j] = z[j] + rng.uniform(0.05, 0.5);
        }
        sets.emplace_back(Box(lo, hi));
        break;
      }
      default: {
        Point a(q);
        do {
          for (std::size_t j = 0; j < q; ++j) a[j] = rng.uniform(-1.0, 1.0);
        } while (norm(a) < 0.1);
        double az = 0.0;
        for (std::size_t j = 0; j < q; ++j) az += a[j] * z[j];
        sets.emplace_back(Halfspace(a, az + margin * norm(a)));
        break;
      }
    }
  }
  FeasibleInstance out;
  out.game = std::make_shared<const GameInstance>(Graph::from_edges(nodes, edges), std::move(sets));
  out.common_point = std::move(z);
  return out;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial) { return derive_seed(base_seed, trial); }

ValidationResult validation_study(const ValidationParams& params) {
  if (params.trials == 0) throw std::invalid_argument("validation_study: trials must be positive");
  ValidationResult result;
  result.trials.resize(params.trials);

  parallel_for(params.trials, params.threads, [&](std::size_t i) {
    TrialResult& tr = result.trials[i];
    tr.trial = i;
    tr.seed = trial_seed(params.base_seed, i);
    tr.instance = make_localization_instance(params.n, params.q, params.rho, params.epsilon, tr.seed,
                                             params.max_attempts);
    const GameInstance& inst = *tr.instance.game;
    tr.fiedler = fiedler_value(inst.graph());

    RunOptions opts;
    opts.max_iters = params.max_iters;
    opts.threshold = params.threshold;
    opts.tolerances = params.tolerances;
    EngineState state = make_state(tr.instance.game);
    if (params.run_dgtc) tr.dgtc = run(state, Algorithm::dgtc, opts);
    if (params.run_dgpc) {
      if (params.step_size > 0.0) state.step_size = params.step_size;
      tr.dgpc = run(state, Algorithm::dgpc, opts);
    }
    if (params.run_pocs) {
      tr.pocs = pocs_run(inst, Point(inst.dim()), params.pocs_cycles);
      for (const auto& set : inst.sets()) tr.pocs_max_distance = std::max(tr.pocs_max_distance, set.distance_to(tr.pocs.point));
    }
  });
  return result;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

std::vector<double> median_curve(const std::vector<const Trace*>& traces) {
  std::size_t length = 0;
  for (const Trace* t : traces) length = std::max(length, t->entries.size());
  std::vector<double> curve(length);
  std::vector<double> column;
  for (std::size_t i = 0; i < length; ++i) {
    column.clear();
    for (const Trace* t : traces) {
      if (t->entries.empty()) continue;
      column.push_back(t->entries[std::min(i, t->entries.size() - 1)].consensus_metric);
    }
    curve[i] = median(column);
  }
  return curve;
}

SweepResult rate_sweep(const SweepParams& params) {
  if (params.realizations == 0) throw std::invalid_argument("rate_sweep: realizations must be positive");
  if (!(params.rho_min < params.rho_max)) throw std::invalid_argument("rate_sweep: rho_min must be below rho_max");
  if (!(params.rho_min > 0.0)) throw std::invalid_argument("rate_sweep: rho_min must be positive");

  struct Candidate {
    std::uint64_t seed;
    double rho;
    LocalizationInstance instance;
  };
  std::vector<Candidate> accepted;
  const std::size_t budget = params.realizations * std::max<std::size_t>(1, params.max_candidates_per_realization);
  SweepResult result;
  while (accepted.size() < params.realizations) {
    if (result.candidates >= budget) {
      throw InstanceGenerationError("rate sweep: only " + std::to_string(accepted.size()) + " of " +
                                        std::to_string(params.realizations) +
                                        " connected realizations after " + std::to_string(budget) + " candidates",
                                    result.candidates);
    }
    const std::uint64_t seed = trial_seed(params.base_seed, result.candidates++);
    Rng rng(derive_seed(seed, 0x7240));
    const double rho = rng.uniform(params.rho_min, params.rho_max);
    try {
      accepted.push_back({seed, rho, make_localization_instance(params.n, params.q, rho, params.epsilon, seed, 1)});
    } catch (const InstanceGenerationError&) {
      // disconnected draw: discarded
    }
  }

  result.records.resize(accepted.size());
  parallel_for(accepted.size(), params.threads, [&](std::size_t i) {
    const Candidate& c = accepted[i];
    SweepRecord& rec = result.records[i];
    rec.trial = i;
    rec.seed = c.seed;
    rec.rho = c.rho;
    rec.fiedler = fiedler_value(c.instance.graph());

    RunOptions opts;
    opts.max_iters = params.max_iters;
    opts.threshold = params.threshold;
    opts.tolerances = params.tolerances;
    opts.record_updates = false;
    const EngineState state = make_state(c.instance.game);
    const Trace dgtc = run(state, Algorithm::dgtc, opts);
    const Trace dgpc = run(state, Algorithm::dgpc, opts);
    rec.iters_dgtc = dgtc.iterations_used;
    rec.conv_dgtc = dgtc.converged;
    rec.iters_dgpc = dgpc.iterations_used;
    rec.conv_dgpc = dgpc.converged;
    rec.dgtc_violations = dgtc.violations;
    rec.dgpc_violations = dgpc.violations;
  });
  return result;
}

SweepSummary summarize_sweep(const std::vector<SweepRecord>& records, double fiedler_cut) {
  auto compare = [&](auto keep) {
    std::vector<double> a, b;
    for (const auto& r : records) {
      if (!keep(r)) continue;
      a.push_back(static_cast<double>(r.iters_dgtc));
      b.push_back(static_cast<double>(r.iters_dgpc));
    }
    MedianComparison m;
    m.count = a.size();
    m.median_dgtc = median(std::move(a));
    m.median_dgpc = median(std::move(b));
    return m;
  };
  SweepSummary s;
  s.below = compare([&](const SweepRecord& r) { return r.fiedler < fiedler_cut; });
  s.above = compare([&](const SweepRecord& r) { return r.fiedler >= fiedler_cut; });
  s.all = compare([](const SweepRecord&) { return true; });
  return s;
}

double default_fiedler_cut(std::size_t q) { return std::max(1.0, 3.0 + 2.0 * (static_cast<double>(q) - 2.0)); }

void write_validation_csv(std::ostream& os, const ValidationResult& result) {
  os << "algo,trial,seed,t,consensus_metric,potential\n";
  for (const TrialResult& tr : result.trials) {
    for (const Trace* trace : {&tr.dgtc, &tr.dgpc}) {
      for (const TraceEntry& e : trace->entries) {
        os << to_string(trace->algorithm) << ',' << tr.trial << ',' << tr.seed << ',' << e.t << ','
           << format_double(e.consensus_metric) << ',' << format_double(e.potential) << '\n';
      }
    }
    // POCS has a single iterate; its per-cycle displacement stands in for the metric.
    for (std::size_t c = 0; c < tr.pocs.displacements.size(); ++c) {
      os << "pocs," << tr.trial << ',' << tr.seed << ',' << (c + 1) << ','
         << format_double(tr.pocs.displacements[c]) << ",\n";
    }
  }
}

void write_median_csv(std::ostream& os, const ValidationResult& result) {
  os << "algo,t,median_consensus_metric\n";
  for (Algorithm algo : {Algorithm::dgtc, Algorithm::dgpc}) {
    std::vector<const Trace*> traces;
    for (const TrialResult& tr : result.trials) {
      const Trace& t = algo == Algorithm::dgtc ? tr.dgtc : tr.dgpc;
      if (!t.entries.empty()) traces.push_back(&t);
    }
    const std::vector<double> curve = median_curve(traces);
    for (std::size_t i = 0; i < curve.size(); ++i) {
      os << to_string(algo) << ',' << i << ',' << format_double(curve[i]) << '\n';
    }
  }
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  os << "t,consensus_metric,potential,num_updated\n";
  for (const TraceEntry& e : trace.entries) {
    os << e.t << ',' << format_double(e.consensus_metric) << ',' << format_double(e.potential) << ','
       << e.updated.size() << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "trial,seed,rho,fiedler,iters_dgtc,conv_dgtc,iters_dgpc,conv_dgpc\n";
  for (const SweepRecord& r : records) {
    os << r.trial << ',' << r.seed << ',' << format_double(r.rho) << ',' << format_double(r.fiedler) << ','
       << r.iters_dgtc << ',' << (r.conv_dgtc ? 1 : 0) << ',' << r.iters_dgpc << ',' << (r.conv_dgpc ? 1 : 0)
       << '\n';
  }
}

void write_pocs_csv(std::ostream& os, const ValidationResult& result) {
  os << "trial,seed,cycle,displacement\n";
  for (const TrialResult& tr : result.trials) {
    for (std::size_t c = 0; c < tr.pocs.displacements.size(); ++c) {
      os << tr.trial << ',' << tr.seed << ',' << (c + 1) << ',' << format_double(tr.pocs.displacements[c]) << '\n';
    }
  }
}

}  // namespace pgcc
