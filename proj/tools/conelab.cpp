#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "conelab/experiments.hpp"
#include "conelab/kinematics.hpp"
#include "conelab/special.hpp"
#include "conelab/statdim.hpp"

using namespace conelab;

namespace {

constexpr int kUsage = 1;
constexpr int kRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void print_estimate(const std::string& label, const StatDimEstimate& e) {
  std::printf("%-12s %.10g", label.c_str(), e.value);
  if (e.std_error > 0.0) std::printf("  (stderr %.3g)", e.std_error);
  std::printf("  [%.6g, %.6g]  method=%s%s\n", e.lower, e.upper, to_string(e.method).c_str(),
              e.asymptotic ? " asymptotic" : "");
  if (e.finite_size)
    std::printf("%-12s %.10g  (stderr %.3g)\n", "finite-size", *e.finite_size,
                e.finite_size_std_error);
}

// Descent cones are named l1(s,d), s1(r,m,n) and perm(d); anything else is a
// cone in the parser grammar.
bool descent_statdim(const std::string& spec, std::int64_t samples, std::uint64_t seed) {
  std::smatch mt;
  static const std::regex l1(R"(\s*l1\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
  static const std::regex s1(R"(\s*s1\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
  static const std::regex perm(R"(\s*(s?perm)\(\s*(\d+)\s*\)\s*)");
  if (std::regex_match(spec, mt, l1)) {
    const Index s = std::stol(mt[1]), d = std::stol(mt[2]);
    print_estimate("l1 descent", statdim_l1_descent(s, d));
    if (samples > 0) {
      const RecipeCurve c = recipe_statdim(SubdifferentialModel::l1(s, d), samples, RngStream(seed));
      std::printf("%-12s %.10g  (stderr %.3g, tau %.6g)\n", "recipe", c.F_min, c.std_error, c.tau_star);
    }
    return true;
  }
  if (std::regex_match(spec, mt, s1)) {
    const Index r = std::stol(mt[1]), m = std::stol(mt[2]), n = std::stol(mt[3]);
    if (r < 1 || r > m || m > n) throw UsageError("s1(r,m,n) needs 1 <= r <= m <= n");
    const PsiS1 p = psi_s1_detail(static_cast<double>(r) / static_cast<double>(m),
                                  static_cast<double>(m) / static_cast<double>(n));
    if (p.clamped)
      std::fprintf(stderr, "warning: rank fraction or aspect ratio was clamped into the stable range\n");
    print_estimate("s1 descent", statdim_s1_descent(r, m, n, samples, RngStream(seed)));
    return true;
  }
  if (std::regex_match(spec, mt, perm)) {
    const Index d = std::stol(mt[2]);
    std::printf("%-12s %.10g  method=closed_form\n", "normal cone", statdim_permutahedron(d, mt[1] == "sperm"));
    return true;
  }
  return false;
}

int cmd_statdim(const std::string& spec, std::int64_t samples, std::uint64_t seed) {
  if (descent_statdim(spec, samples, seed)) return 0;
  const ConeSpec cone = parse_cone(spec);
  std::printf("cone         %s (dimension %ld)\n", cone.describe().c_str(),
              static_cast<long>(cone.ambient_dimension()));
  if (const auto cf = statdim_closed_form(cone)) print_estimate("closed form", *cf);
  if (samples > 0) print_estimate("monte carlo", statdim_monte_carlo(cone, samples, RngStream(seed)));
  return 0;
}

int cmd_ivols(const std::string& spec) {
  const IntrinsicVolumes iv = ivols_of(parse_cone(spec));
  std::printf("k,v_k,t_k,h_k\n");
  for (Index k = 0; k <= iv.d; ++k)
    std::printf("%ld,%.15g,%.15g,%.15g\n", static_cast<long>(k), iv.v[k], tail(iv, k), half_tail(iv, k));
  const IvolsDefects def = check_ivols(iv);
  std::fprintf(stderr, "statdim %.12g, worst invariant defect %.2e\n", statdim_from_ivols(iv), def.worst());
  return 0;
}

int cmd_predict(double dc, double dk, long d, double eta) {
  const KinematicPrediction p = kinematic_predict(dc, dk, d, eta);
  std::printf("verdict      %s\n", to_string(p.verdict).c_str());
  std::printf("lambda       %.6g\n", p.lambda);
  std::printf("a_eta sqrt(d) %.6g\n", p.a_eta * std::sqrt(static_cast<double>(d)));
  std::printf("bound        %.6g (raw %.6g)\n", p.bound, p.raw_bound);
  return 0;
}

int cmd_run(const std::string& name, const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out, int threads) {
  const Experiment e = experiment_from_string(name);
  ExperimentConfig c = config_path.empty() ? default_config(e) : parse_config(read_file(config_path), e);
  if (seed) c.master_seed = *seed;
  if (!out.empty()) c.out_dir = out;
  if (threads > 0) omp_set_num_threads(threads);
  const GridResult g = run_experiment(c);
  emit_outputs(g, c.out_dir);
  long trials = 0, failures = 0;
  for (const GridCell& cell : g.cells) {
    trials += cell.trials;
    failures += cell.solver_failures;
  }
  std::printf("%s: %zu cells, %ld trials, %ld solver failures, %.1f s -> %s\n", name.c_str(),
              g.cells.size(), trials, failures, g.wall_seconds, c.out_dir.c_str());
  for (const ColumnFit& f : g.fits) {
    if (!g.key_name.empty()) std::printf("%s=%ld ", g.key_name.c_str(), f.key);
    std::printf("mu=%.3f theory=%.3f |mu-theory|/scale=%.4f width=%.2f%s\n", f.fit.mu, f.theory,
                std::abs(f.fit.mu - f.theory) / g.scale, f.fit.width_5_95(), f.fit.separated ? " separated" : "");
  }
  return 0;
}

int cmd_fit(const std::string& path, int orientation) {
  auto cols = read_grid_csv(read_file(path));
  if (orientation != 0)
    for (CsvColumn& c : cols) c.orientation = orientation;
  std::printf("key,mu,beta0,beta1,width_5_95,separated\n");
  for (const CsvColumn& c : cols) {
    if (c.points.size() < 4) {
      std::fprintf(stderr, "key %ld: fewer than 4 points, skipped\n", c.key);
      continue;
    }
    const LogisticFit f = fit_empirical_transition(c.points, c.orientation);
    std::printf("%ld,%.10g,%.10g,%.10g,%.10g,%d\n", c.key, f.mu, f.beta0, f.beta1, f.width_5_95(),
                f.separated ? 1 : 0);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistical dimension, intrinsic volumes and phase-transition experiments for convex cones"};
  app.require_subcommand(1);

  std::string spec;
  std::int64_t samples = 0;
  std::uint64_t seed = 1;
  auto* st = app.add_subcommand("statdim", "Statistical dimension of a cone or descent cone");
  st->add_option("cone", spec, "Cone spec, or l1(s,d), s1(r,m,n), perm(d), sperm(d)")->required();
  st->add_option("--samples", samples, "Monte Carlo / recipe samples (0 = none)");
  st->add_option("--seed", seed, "Master seed");

  auto* iv = app.add_subcommand("ivols", "Conic intrinsic volumes");
  iv->add_option("cone", spec, "Cone spec")->required();

  double dc = 0.0, dk = 0.0, eta = 0.05;
  long d = 0;
  auto* pr = app.add_subcommand("predict", "Approximate kinematic verdict");
  pr->add_option("--delta-c", dc, "Statistical dimension of C")->required();
  pr->add_option("--delta-k", dk, "Statistical dimension of K")->required();
  pr->add_option("--d", d, "Ambient dimension")->required();
  pr->add_option("--eta", eta, "Failure probability")->capture_default_str();

  std::string name, config, out;
  std::optional<std::uint64_t> run_seed;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Run a randomized experiment");
  run->add_option("experiment", name,
                  "l1_grid, s1_grid, demix_l1l1_grid, demix_s1l1_grid, socp_feas, vectors_from_lists")
      ->required();
  run->add_option("--config", config, "Flat key = value config file");
  run->add_option("--seed", run_seed, "Override the master seed");
  run->add_option("--out", out, "Output directory");
  run->add_option("--threads", threads, "OpenMP threads (0 = runtime default)");

  std::string csv;
  auto* fit = app.add_subcommand("fit", "Logistic fits of a grid.csv");
  fit->add_option("grid", csv, "grid.csv written by run")->required();
  int orientation = 0;
  fit->add_option("--orientation", orientation,
                  "+1 if success rises along the abscissa, -1 if it falls (default: -1 for sy, else +1)")
      ->check(CLI::IsMember({-1, 0, 1}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*st) return cmd_statdim(spec, samples, seed);
    if (*iv) return cmd_ivols(spec);
    if (*pr) return cmd_predict(dc, dk, d, eta);
    if (*run) return cmd_run(name, config, run_seed, out, threads);
    if (*fit) return cmd_fit(csv, orientation);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntime;
  }
  return kUsage;
}
