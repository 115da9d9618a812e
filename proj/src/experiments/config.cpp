#include <cmath>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include "conelab/experiments.hpp"
#include "conelab/special.hpp"

namespace conelab {

namespace {

constexpr std::pair<Experiment, std::string_view> kNames[] = {
    {Experiment::l1_grid, "l1_grid"},
    {Experiment::s1_grid, "s1_grid"},
    {Experiment::demix_l1l1_grid, "demix_l1l1_grid"},
    {Experiment::demix_s1l1_grid, "demix_s1l1_grid"},
    {Experiment::socp_feas, "socp_feas"},
    {Experiment::vectors_from_lists, "vectors_from_lists"},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

long to_long(const std::string& key, const std::string& v) {
  long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw DomainError("config: " + key + " expects an integer, got '" + v + "'");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw DomainError("config: " + key + " expects a non-negative integer, got '" + v + "'");
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty())
    throw DomainError("config: " + key + " expects a number, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw DomainError("config: " + key + " expects true or false, got '" + v + "'");
}

// Ranges derived from the dimension; explicit keys override them afterwards.
void derive_ranges(ExperimentConfig& c) {
  const long nn = c.n * c.n;
  switch (c.experiment) {
    case Experiment::l1_grid:
      c.keys = {0, c.d, 2};
      c.abscissas = {0, c.d, 1};
      break;
    case Experiment::s1_grid:
      c.keys = {0, c.n, 1};
      c.abscissas = {0, nn, std::max(1L, nn / 36)};
      break;
    case Experiment::demix_l1l1_grid: {
      const long step = std::max(1L, c.d / 20);
      c.keys = {0, (4 * c.d) / 5, step};
      c.abscissas = {0, (4 * c.d) / 5, step};
      break;
    }
    case Experiment::demix_s1l1_grid:
      c.keys = {0, c.n / 2, 1};
      c.abscissas = {0, (5 * nn) / 8, std::max(1L, nn / 32)};
      break;
    case Experiment::socp_feas:
      c.keys = {0, 0, 1};
      c.abscissas = {1, std::max(1L, c.d / 3), 1};
      break;
    case Experiment::vectors_from_lists: {
      const long margin = 3 * static_cast<long>(std::ceil(harmonic_number(c.d)));
      c.keys = {0, 0, 1};
      c.abscissas = {std::max(0L, c.d - margin), c.d, 1};
      break;
    }
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [k, name] : kNames)
    if (k == e) return std::string(name);
  return "unknown";
}

Experiment experiment_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw DomainError("unknown experiment '" + std::string(name) + "'");
}

std::vector<long> IntRange::values() const {
  std::vector<long> out;
  if (step <= 0) throw DomainError("range step must be positive");
  for (long v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::l1_grid:
      c.d = 40;
      break;
    case Experiment::s1_grid:
      c.n = 12;
      break;
    case Experiment::demix_l1l1_grid:
      c.d = 60;
      c.reps = 20;
      break;
    case Experiment::demix_s1l1_grid:
      c.n = 8;
      c.reps = 20;
      break;
    case Experiment::socp_feas:
      c.d = 96;
      c.cone = "circ(96, atan(sqrt(1/5)))";
      break;
    case Experiment::vectors_from_lists:
      c.d = 60;
      break;
  }
  derive_ranges(c);
  return c;
}

ExperimentConfig parse_config(std::string_view text, Experiment e) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string val = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw DomainError("config line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, val).second) throw DomainError("config: duplicate key '" + key + "'");
  }

  ExperimentConfig c = default_config(e);
  const bool cone_given = kv.count("cone") > 0;
  auto take = [&](const char* key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  if (auto v = take("experiment"); v && experiment_from_string(*v) != e)
    throw DomainError("config: experiment '" + *v + "' disagrees with '" + to_string(e) + "'");
  if (auto v = take("d")) c.d = to_long("d", *v);
  if (auto v = take("n")) c.n = to_long("n", *v);
  derive_ranges(c);
  if (auto v = take("reps")) c.reps = to_long("reps", *v);
  if (auto v = take("seed")) c.master_seed = to_u64("seed", *v);
  if (auto v = take("cone")) c.cone = *v;
  if (auto v = take("out")) c.out_dir = *v;
  if (auto v = take("allow_large")) c.allow_large = to_bool("allow_large", *v);
  if (auto v = take("key_min")) c.keys.lo = to_long("key_min", *v);
  if (auto v = take("key_max")) c.keys.hi = to_long("key_max", *v);
  if (auto v = take("key_step")) c.keys.step = to_long("key_step", *v);
  if (auto v = take("m_min")) c.abscissas.lo = to_long("m_min", *v);
  if (auto v = take("m_max")) c.abscissas.hi = to_long("m_max", *v);
  if (auto v = take("m_step")) c.abscissas.step = to_long("m_step", *v);
  if (auto v = take("tol")) c.solver.tol = to_double("tol", *v);
  if (auto v = take("max_iters")) c.solver.max_iters = static_cast<int>(to_long("max_iters", *v));
  if (auto v = take("feas_tol")) c.feasibility.tol = to_double("feas_tol", *v);
  if (auto v = take("feas_max_iters"))
    c.feasibility.max_iters = static_cast<int>(to_long("feas_max_iters", *v));
  if (auto v = take("stall_window"))
    c.feasibility.stall_window = static_cast<int>(to_long("stall_window", *v));
  if (auto v = take("stall_rel")) c.feasibility.stall_rel = to_double("stall_rel", *v);
  if (auto v = take("lp_max_rounds"))
    c.lp.max_rounds = static_cast<int>(to_long("lp_max_rounds", *v));
  if (!kv.empty()) throw DomainError("config: unknown key '" + kv.begin()->first + "'");
  if (c.experiment == Experiment::socp_feas && !cone_given)
    c.cone = "circ(" + std::to_string(c.d) + ", atan(sqrt(1/5)))";
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  if (reps < 1) throw DomainError("config: reps must be at least 1");
  if (keys.step <= 0 || abscissas.step <= 0) throw DomainError("config: steps must be positive");
  if (keys.lo > keys.hi || abscissas.lo > abscissas.hi)
    throw DomainError("config: empty range");
  if (keys.lo < 0 || abscissas.lo < 0) throw DomainError("config: ranges must be non-negative");
  const bool matrix = experiment == Experiment::s1_grid || experiment == Experiment::demix_s1l1_grid;
  if (matrix) {
    if (n < 1) throw DomainError("config: n must be positive");
    if (!allow_large && n > kMaxDeskMatrixSide)
      throw DomainError("config: n exceeds the desk-scale cap (set allow_large = true)");
  } else {
    if (d < 1) throw DomainError("config: d must be positive");
    if (!allow_large && d > kMaxDeskDimension)
      throw DomainError("config: d exceeds the desk-scale cap (set allow_large = true)");
  }
  const long dim = matrix ? n * n : d;
  switch (experiment) {
    case Experiment::l1_grid:
      if (keys.hi > d || abscissas.hi > d) throw DomainError("config: s and m must not exceed d");
      break;
    case Experiment::s1_grid:
      if (keys.hi > n || abscissas.hi > dim)
        throw DomainError("config: r must not exceed n and m must not exceed n^2");
      break;
    case Experiment::demix_l1l1_grid:
      if (keys.hi > d || abscissas.hi > d) throw DomainError("config: sparsities must not exceed d");
      break;
    case Experiment::demix_s1l1_grid:
      if (keys.hi > n || abscissas.hi > dim)
        throw DomainError("config: r must not exceed n and s_y must not exceed n^2");
      break;
    case Experiment::socp_feas:
      if (abscissas.lo < 1) throw DomainError("config: feasibility needs m >= 1");
      if (cone.empty()) throw DomainError("config: socp_feas needs a cone");
      if (parse_cone(cone).ambient_dimension() != d) throw DomainError("config: cone dimension differs from d");
      if (abscissas.hi > d) throw DomainError("config: m must not exceed d");
      break;
    case Experiment::vectors_from_lists:
      if (abscissas.hi > d) throw DomainError("config: m must not exceed d");
      break;
  }
  if (solver.tol <= 0.0 || solver.max_iters < 1 || feasibility.tol <= 0.0 ||
      feasibility.max_iters < 1 || feasibility.stall_window < 1 || lp.max_rounds < 1)
    throw DomainError("config: solver parameters must be positive");
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c) {
  std::vector<std::pair<std::string, std::string>> out = {
      {"experiment", to_string(c.experiment)},
      {"d", std::to_string(c.d)},
      {"n", std::to_string(c.n)},
      {"reps", std::to_string(c.reps)},
      {"seed", std::to_string(c.master_seed)},
      {"key_min", std::to_string(c.keys.lo)},
      {"key_max", std::to_string(c.keys.hi)},
      {"key_step", std::to_string(c.keys.step)},
      {"m_min", std::to_string(c.abscissas.lo)},
      {"m_max", std::to_string(c.abscissas.hi)},
      {"m_step", std::to_string(c.abscissas.step)},
      {"cone", c.cone},
      {"tol", format_double(c.solver.tol)},
      {"max_iters", std::to_string(c.solver.max_iters)},
      {"feas_tol", format_double(c.feasibility.tol)},
      {"feas_max_iters", std::to_string(c.feasibility.max_iters)},
      {"stall_window", std::to_string(c.feasibility.stall_window)},
      {"stall_rel", format_double(c.feasibility.stall_rel)},
      {"lp_max_rounds", std::to_string(c.lp.max_rounds)},
      {"allow_large", c.allow_large ? "true" : "false"},
  };
  return out;
}

}  // namespace conelab
