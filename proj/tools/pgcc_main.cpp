// pgcc: command-line driver for the constrained-consensus experiments.
//
//   pgcc validate [--suite all|sets|graph|potential|engine] [--seed S]
//   pgcc run      [--n N --q Q --rho R --epsilon E --trials T ...] [--out FILE]
//   pgcc sweep    [--q Q --rho-min A --rho-max B --realizations K ...] [--out FILE]
//   pgcc pocs     [--n N --q Q --rho R --trials T --cycles C] [--out FILE]
//   pgcc graph    [--n N --q Q --rho R --seed S] [--out FILE]
//
// Every command accepts --config FILE (flat key = value lines); flags given on
// the command line override values from the file.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "pgcc/config.hpp"
#include "pgcc/csv.hpp"
#include "pgcc/errors.hpp"
#include "pgcc/experiments.hpp"
#include "pgcc/kernels.hpp"
#include "pgcc/validate.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kGeneration = 3,
  kInvariant = 4,
  kIo = 5,
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::string& path) {
  if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string output_path(const pgcc::RunConfig& c, const char* fallback) { return c.out.empty() ? fallback : c.out; }

// --config must be applied before the other flags are bound, so it is located
// by hand first.
std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return {};
}

void print_warnings(const pgcc::ValidationResult& result) {
  std::set<std::string> seen;
  for (const auto& tr : result.trials)
    for (const auto& w : tr.dgpc.warnings)
      if (seen.insert(w).second) std::cerr << "warning: " << w << '\n';
}

int cmd_validate(const pgcc::RunConfig& c) {
  pgcc::ValidateOptions opts;
  opts.seed = c.seed;
  opts.step_factor = c.step_factor;
  opts.tolerances = pgcc::to_tolerances(c);
  const auto results = pgcc::run_suite(c.suite, opts);
  std::size_t failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.name << " (" << r.cases << " cases";
    if (!r.passed()) std::cout << ", " << r.failures << " failed; first: " << r.detail;
    std::cout << ")\n";
    failed += r.passed() ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all invariants hold" : std::to_string(failed) + " invariant check(s) failed")
            << " [kernels: " << pgcc::kernels::active().name << "]\n";
  return failed == 0 ? kOk : kInvariant;
}

int cmd_run(const pgcc::RunConfig& c, const std::string& median_out, const std::string& trace_dir) {
  pgcc::check_for_run(c);
  const pgcc::ValidationResult result = pgcc::validation_study(pgcc::to_validation_params(c));
  print_warnings(result);

  const std::string path = output_path(c, "validation.csv");
  auto out = open_output(path);
  pgcc::write_validation_csv(out, result);
  finish_output(out, path);
  if (!median_out.empty()) {
    auto m = open_output(median_out);
    pgcc::write_median_csv(m, result);
    finish_output(m, median_out);
  }
  if (!trace_dir.empty()) {
    for (const auto& tr : result.trials) {
      for (const pgcc::Trace* t : {&tr.dgtc, &tr.dgpc}) {
        const std::string p = trace_dir + "/trace_" + std::string(pgcc::to_string(t->algorithm)) + "_" +
                              std::to_string(tr.trial) + ".csv";
        auto f = open_output(p);
        pgcc::write_trace_csv(f, *t);
        finish_output(f, p);
      }
    }
  }

  std::vector<double> it_dgtc, it_dgpc;
  std::size_t conv_dgtc = 0, conv_dgpc = 0;
  double pocs_worst = 0.0;
  for (const auto& tr : result.trials) {
    it_dgtc.push_back(static_cast<double>(tr.dgtc.iterations_used));
    it_dgpc.push_back(static_cast<double>(tr.dgpc.iterations_used));
    conv_dgtc += tr.dgtc.converged ? 1 : 0;
    conv_dgpc += tr.dgpc.converged ? 1 : 0;
    pocs_worst = std::max(pocs_worst, tr.pocs_max_distance);
  }
  std::cout << "trials: " << result.trials.size() << "  (n=" << c.n << ", q=" << c.q << ", rho=" << c.rho
            << ", threshold=" << c.threshold << ")\n"
            << "dgtc: converged " << conv_dgtc << "/" << result.trials.size() << ", median iterations "
            << pgcc::median(it_dgtc) << '\n'
            << "dgpc: converged " << conv_dgpc << "/" << result.trials.size() << ", median iterations "
            << pgcc::median(it_dgpc) << '\n'
            << "pocs: " << c.cycles << " cycles, worst distance to a set " << pgcc::format_double(pocs_worst) << '\n'
            << "wrote " << path << '\n';
  return kOk;
}

int cmd_sweep(const pgcc::RunConfig& c) {
  pgcc::check_for_sweep(c);
  const pgcc::SweepResult result = pgcc::rate_sweep(pgcc::to_sweep_params(c));
  const std::string path = output_path(c, "sweep.csv");
  auto out = open_output(path);
  pgcc::write_sweep_csv(out, result.records);
  finish_output(out, path);

  const double cut = c.fiedler_cut > 0.0 ? c.fiedler_cut : pgcc::default_fiedler_cut(c.q);
  const pgcc::SweepSummary s = pgcc::summarize_sweep(result.records, cut);
  auto line = [](const char* label, const pgcc::MedianComparison& m) {
    std::cout << label << ": " << m.count << " realizations, median iterations dgtc " << m.median_dgtc
              << ", dgpc " << m.median_dgpc << '\n';
  };
  std::cout << "realizations: " << result.records.size() << " connected of " << result.candidates
            << " candidates (q=" << c.q << ", rho in [" << c.rho_min << ", " << c.rho_max << "])\n";
  std::cout << "fiedler cut " << cut << '\n';
  line("  fiedler <  cut", s.below);
  line("  fiedler >= cut", s.above);
  line("  all           ", s.all);
  std::cout << "wrote " << path << '\n';
  return kOk;
}

int cmd_pocs(pgcc::RunConfig c) {
  pgcc::check_for_run(c);
  pgcc::ValidationParams p = pgcc::to_validation_params(c);
  p.run_dgtc = false;
  p.run_dgpc = false;
  const pgcc::ValidationResult result = pgcc::validation_study(p);
  const std::string path = output_path(c, "pocs.csv");
  auto out = open_output(path);
  pgcc::write_pocs_csv(out, result);
  finish_output(out, path);
  double worst = 0.0;
  for (const auto& tr : result.trials) worst = std::max(worst, tr.pocs_max_distance);
  std::cout << "pocs: " << result.trials.size() << " instances, " << c.cycles
            << " cycles, worst final distance to a set " << pgcc::format_double(worst) << "\nwrote " << path << '\n';
  return kOk;
}

int cmd_graph(const pgcc::RunConfig& c) {
  pgcc::check_for_run(c);
  const pgcc::GeometricGraph gg = pgcc::generate_rgg(c.n, c.q, c.rho, c.seed);
  const std::string path = output_path(c, "edges.txt");
  auto out = open_output(path);
  pgcc::write_edge_list(out, gg.graph);
  finish_output(out, path);
  std::cout << "nodes " << c.n << ", edges " << gg.graph.edge_count() << ", connected "
            << (pgcc::is_connected(gg.graph) ? "yes" : "no") << ", fiedler "
            << pgcc::format_double(pgcc::fiedler_value(gg.graph)) << "\nwrote " << path << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  pgcc::RunConfig config;
  const std::string config_path = find_config_path(argc, argv);
  try {
    if (!config_path.empty()) config = pgcc::load_config_file(config_path);
  } catch (const pgcc::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App app{"Distributed constrained consensus: best-response and gradient-projection simulations"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_dummy;
  std::string median_out, trace_dir, dump_config;
  app.add_option("--config", config_dummy, "Flat key = value configuration file");
  app.add_option("--dump-config", dump_config, "Write the effective configuration to this file");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Base seed");
    sub->add_option("--out", config.out, "Output path");
    sub->add_option("--threads", config.threads, "Worker threads");
    sub->add_option("--config", config_dummy, "Flat key = value configuration file");
  };
  auto instance = [&](CLI::App* sub) {
    sub->add_option("--n", config.n, "Number of nodes");
    sub->add_option("--q", config.q, "Dimension");
    sub->add_option("--epsilon", config.epsilon, "Radius slack of the localization balls");
    sub->add_option("--max-attempts", config.max_attempts, "Connectivity draws per instance");
  };
  auto iteration = [&](CLI::App* sub) {
    sub->add_option("--threshold", config.threshold, "Consensus metric threshold");
    sub->add_option("--max-iters", config.max_iters, "Round limit (0 = 100 n)");
    sub->add_option("--tol-fixed-point", config.tol_fixed_point, "DGTC stops once every update metric is at most this");
  };

  CLI::App* validate = app.add_subcommand("validate", "Run the randomized invariant suites");
  common(validate);
  validate->add_option("--suite", config.suite, "all, sets, graph, potential or engine");
  validate->add_option("--step-factor", config.step_factor, "Scale the DGPC step in the engine suite (debugging)");

  CLI::App* run = app.add_subcommand("run", "Monte-Carlo validation study (DGTC, DGPC, POCS)");
  common(run);
  instance(run);
  iteration(run);
  run->add_option("--rho", config.rho, "Communication range");
  run->add_option("--trials", config.trials, "Number of instances");
  run->add_option("--step-size", config.step_size, "DGPC step (0 = 0.99 of the bound)");
  run->add_option("--cycles", config.cycles, "POCS cycles");
  run->add_option("--median-out", median_out, "Per-iteration median consensus metric CSV");
  run->add_option("--trace-dir", trace_dir, "Directory for per-trial trace CSVs");

  CLI::App* sweep = app.add_subcommand("sweep", "Convergence-rate sweep over the Fiedler value");
  common(sweep);
  instance(sweep);
  iteration(sweep);
  sweep->add_option("--rho-min", config.rho_min, "Smallest communication range");
  sweep->add_option("--rho-max", config.rho_max, "Largest communication range");
  sweep->add_option("--realizations", config.realizations, "Connected realizations");
  sweep->add_option("--fiedler-cut", config.fiedler_cut, "Fiedler split for the summary (0 = default for q)");

  CLI::App* pocs = app.add_subcommand("pocs", "Centralized POCS baseline only");
  common(pocs);
  instance(pocs);
  pocs->add_option("--rho", config.rho, "Communication range");
  pocs->add_option("--trials", config.trials, "Number of instances");
  pocs->add_option("--cycles", config.cycles, "POCS cycles");

  CLI::App* graph = app.add_subcommand("graph", "Generate one random geometric graph and export its edge list");
  common(graph);
  instance(graph);
  graph->add_option("--rho", config.rho, "Communication range");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (!dump_config.empty()) {
      auto f = open_output(dump_config);
      f << pgcc::to_config_text(config);
      finish_output(f, dump_config);
    }
    if (validate->parsed()) return cmd_validate(config);
    if (run->parsed()) return cmd_run(config, median_out, trace_dir);
    if (sweep->parsed()) return cmd_sweep(config);
    if (pocs->parsed()) return cmd_pocs(config);
    if (graph->parsed()) return cmd_graph(config);
  } catch (const pgcc::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const pgcc::InstanceGenerationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kGeneration;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
