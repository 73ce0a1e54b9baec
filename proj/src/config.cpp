#include "pgcc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pgcc/csv.hpp"
#include "pgcc/errors.hpp"

namespace pgcc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename Int>
Int parse_unsigned(std::string_view key, std::string_view text) {
  Int value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("config: '" + std::string(key) + "' expects a nonnegative integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view key, std::string_view text) {
  try {
    return parse_double(text);
  } catch (const std::invalid_argument&) {
    throw ConfigError("config: '" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
  }
}

struct Field {
  std::function<void(RunConfig&, std::string_view key, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field field(T RunConfig::*member) {
  Field f;
  f.set = [member](RunConfig& c, std::string_view key, std::string_view v) {
    if constexpr (std::is_same_v<T, std::string>) {
      c.*member = std::string(v);
    } else if constexpr (std::is_floating_point_v<T>) {
      c.*member = parse_real(key, v);
    } else {
      c.*member = parse_unsigned<T>(key, v);
    }
  };
  f.get = [member](const RunConfig& c) {
    if constexpr (std::is_same_v<T, std::string>) {
      return c.*member;
    } else if constexpr (std::is_floating_point_v<T>) {
      return format_double(c.*member);
    } else {
      return std::to_string(c.*member);
    }
  };
  return f;
}

// Ordered: to_config_text emits keys in this order.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"n", field(&RunConfig::n)},
      {"q", field(&RunConfig::q)},
      {"rho", field(&RunConfig::rho)},
      {"rho_min", field(&RunConfig::rho_min)},
      {"rho_max", field(&RunConfig::rho_max)},
      {"epsilon", field(&RunConfig::epsilon)},
      {"trials", field(&RunConfig::trials)},
      {"realizations", field(&RunConfig::realizations)},
      {"threshold", field(&RunConfig::threshold)},
      {"max_iters", field(&RunConfig::max_iters)},
      {"step_size", field(&RunConfig::step_size)},
      {"cycles", field(&RunConfig::cycles)},
      {"fiedler_cut", field(&RunConfig::fiedler_cut)},
      {"seed", field(&RunConfig::seed)},
      {"max_attempts", field(&RunConfig::max_attempts)},
      {"threads", field(&RunConfig::threads)},
      {"out", field(&RunConfig::out)},
      {"suite", field(&RunConfig::suite)},
      {"step_factor", field(&RunConfig::step_factor)},
      {"tol_feasibility", field(&RunConfig::tol_feasibility)},
      {"tol_fixed_point", field(&RunConfig::tol_fixed_point)},
  };
  return table;
}

const Field* find_field(const std::string& key) {
  for (const auto& [name, f] : fields())
    if (name == key) return &f;
  return nullptr;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError("config: " + message);
}

}  // namespace

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key(trim(line.substr(0, eq)));
    for (char& ch : key)
      if (ch == '-') ch = '_';
    const Field* f = find_field(key);
    if (f == nullptr) throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    f->set(base, key, trim(line.substr(eq + 1)));
  }
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string to_config_text(const RunConfig& config) {
  std::string out;
  for (const auto& [name, f] : fields()) out += name + " = " + f.get(config) + "\n";
  return out;
}

void check_common(const RunConfig& c) {
  require(c.n >= 2, "n must be at least 2");
  require(c.q >= 1, "q must be at least 1");
  require(c.epsilon > 0.0 && std::isfinite(c.epsilon), "epsilon must be positive");
  require(c.threshold >= 0.0, "threshold must be nonnegative");
  require(c.step_size >= 0.0 && std::isfinite(c.step_size), "step_size must be nonnegative (0 = default)");
  require(c.max_attempts >= 1, "max_attempts must be positive");
  require(c.threads >= 1, "threads must be positive");
  require(c.step_factor > 0.0 && std::isfinite(c.step_factor), "step_factor must be positive");
  require(c.tol_feasibility >= 0.0, "tol_feasibility must be nonnegative");
  require(c.tol_fixed_point >= 0.0, "tol_fixed_point must be nonnegative");
}

void check_for_run(const RunConfig& c) {
  check_common(c);
  require(c.rho > 0.0 && std::isfinite(c.rho), "rho must be positive");
  require(c.trials >= 1, "trials must be positive");
  require(c.cycles >= 1, "cycles must be positive");
}

void check_for_sweep(const RunConfig& c) {
  check_common(c);
  require(c.realizations >= 1, "realizations must be positive");
  require(c.rho_min > 0.0, "rho_min must be positive");
  require(c.rho_min < c.rho_max && std::isfinite(c.rho_max), "rho_min must be below rho_max");
  require(c.fiedler_cut >= 0.0, "fiedler_cut must be nonnegative (0 = default)");
}

ValidationParams to_validation_params(const RunConfig& c) {
  ValidationParams p;
  p.n = c.n;
  p.q = c.q;
  p.rho = c.rho;
  p.epsilon = c.epsilon;
  p.trials = c.trials;
  p.max_iters = c.max_iters;
  p.threshold = c.threshold;
  p.step_size = c.step_size;
  p.pocs_cycles = c.cycles;
  p.base_seed = c.seed;
  p.max_attempts = c.max_attempts;
  p.threads = c.threads;
  p.tolerances = to_tolerances(c);
  return p;
}

SweepParams to_sweep_params(const RunConfig& c) {
  SweepParams p;
  p.n = c.n;
  p.q = c.q;
  p.rho_min = c.rho_min;
  p.rho_max = c.rho_max;
  p.epsilon = c.epsilon;
  p.realizations = c.realizations;
  p.max_iters = c.max_iters;
  p.threshold = c.threshold;
  p.base_seed = c.seed;
  p.max_candidates_per_realization = c.max_attempts;
  p.threads = c.threads;
  p.tolerances = to_tolerances(c);
  return p;
}

Tolerances to_tolerances(const RunConfig& c) {
  Tolerances t;
  t.feasibility = c.tol_feasibility;
  t.fixed_point_metric = c.tol_fixed_point;
  return t;
}

}  // namespace pgcc
