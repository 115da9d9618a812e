#include <chrono>
#include <cmath>
#include <functional>

#include "conelab/experiments.hpp"
#include "conelab/kinematics.hpp"
#include "conelab/special.hpp"
#include "conelab/statdim.hpp"

namespace conelab {

namespace {

enum Outcome : unsigned char { kFailure = 0, kSuccess = 1, kSolverFailure = 2 };

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t cell_id(Experiment e, long key, long abscissa) {
  return hash_combine(hash_combine(fnv1a(to_string(e)), static_cast<std::uint64_t>(key)),
                      static_cast<std::uint64_t>(abscissa));
}

// One trial: builds the instance from its engine and reports the outcome.
using Trial = std::function<Outcome(long key, long abscissa, Engine& eng)>;

Outcome run_solver(const ProblemInstance& inst, const ExperimentConfig& c) {
  try {
    const SolveResult r = solve(inst, c.solver, c.feasibility, c.lp);
    if (r.success) return kSuccess;
    return r.status == SolveStatus::max_iters ? kSolverFailure : kFailure;
  } catch (const NumericalError&) {
    return kSolverFailure;
  }
}

GridResult run_grid(const ExperimentConfig& c, const Trial& trial, Exec exec) {
  c.validate();
  const auto start = std::chrono::steady_clock::now();
  GridResult g;
  g.config = c;
  g.version = kConelabVersion;
  const bool one_dimensional =
      c.experiment == Experiment::socp_feas || c.experiment == Experiment::vectors_from_lists;
  g.keys = one_dimensional ? std::vector<long>{0} : c.keys.values();
  g.abscissas = c.abscissas.values();

  const std::size_t nk = g.keys.size(), na = g.abscissas.size();
  const auto reps = static_cast<std::size_t>(c.reps);
  std::vector<unsigned char> outcome(nk * na * reps, kFailure);
  const RngStream master(c.master_seed);
  for_each_index(
      static_cast<std::int64_t>(outcome.size()),
      [&](std::int64_t t) {
        const auto idx = static_cast<std::size_t>(t);
        const std::size_t cell = idx / reps;
        const long rep = static_cast<long>(idx % reps);
        const long key = g.keys[cell / na];
        const long abscissa = g.abscissas[cell % na];
        Engine eng = master.substream(cell_stream_id(c.experiment, key, abscissa, rep)).engine();
        try {
          outcome[idx] = trial(key, abscissa, eng);
        } catch (const NumericalError&) {
          outcome[idx] = kSolverFailure;
        }
      },
      exec);

  g.cells.reserve(nk * na);
  for (std::size_t cell = 0; cell < nk * na; ++cell) {
    GridCell gc;
    gc.key = g.keys[cell / na];
    gc.abscissa = g.abscissas[cell % na];
    gc.trials = c.reps;
    gc.stream_id = cell_id(c.experiment, gc.key, gc.abscissa);
    for (std::size_t r = 0; r < reps; ++r) {
      const unsigned char o = outcome[cell * reps + r];
      gc.successes += o == kSuccess;
      gc.solver_failures += o == kSolverFailure;
    }
    g.cells.push_back(gc);
  }
  g.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return g;
}

// Real s in [0, dim] with psi_l1(s / dim) = 1 - other / dim: the sparsity at
// which the two descent cones together fill the space.
double demix_boundary(double other, double dim) {
  const double target = 1.0 - other / dim;
  if (target <= 0.0) return 0.0;
  if (target >= 1.0) return dim;
  return dim * brent_root([&](double rho) { return psi_l1(rho) - target; }, 0.0, 1.0, 1e-12);
}

double l1_theory(long s, long d) {
  if (s <= 0) return 0.0;
  return statdim_l1_descent(s, d).value;
}

double s1_theory(long r, long n) {
  if (r <= 0) return 0.0;
  return statdim_s1_descent(r, n, n).value;
}

void finish(GridResult& g) { fit_columns(g); }

}  // namespace

std::uint64_t cell_stream_id(Experiment e, long key, long abscissa, long rep) {
  return hash_combine(cell_id(e, key, abscissa), static_cast<std::uint64_t>(rep));
}

const GridCell& GridResult::cell(std::size_t key_index, std::size_t abscissa_index) const {
  return cells.at(key_index * abscissas.size() + abscissa_index);
}

GridResult run_l1_grid(const ExperimentConfig& c, Exec exec) {
  if (c.experiment != Experiment::l1_grid) throw DomainError("run_l1_grid: wrong experiment");
  GridResult g = run_grid(
      c,
      [&](long s, long m, Engine& eng) {
        return run_solver(make_l1_instance(c.d, s, m, eng), c);
      },
      exec);
  g.key_name = "s";
  g.abscissa_name = "m";
  g.scale = static_cast<double>(c.d);
  for (long s = 0; s <= c.d; ++s)
    g.theory.push_back({static_cast<double>(s), l1_theory(s, c.d)});
  finish(g);
  return g;
}

GridResult run_s1_grid(const ExperimentConfig& c, Exec exec) {
  if (c.experiment != Experiment::s1_grid) throw DomainError("run_s1_grid: wrong experiment");
  GridResult g = run_grid(
      c,
      [&](long r, long m, Engine& eng) {
        // too many degrees of freedom for the measurement count: declared failure
        if (r >= static_cast<long>(std::ceil(std::sqrt(static_cast<double>(m)))) + 1)
          return kFailure;
        return run_solver(make_s1_instance(c.n, r, m, eng), c);
      },
      exec);
  g.key_name = "r";
  g.abscissa_name = "m";
  g.scale = static_cast<double>(c.n * c.n);
  for (long r = 0; r <= c.n; ++r) g.theory.push_back({static_cast<double>(r), s1_theory(r, c.n)});
  finish(g);
  return g;
}

GridResult run_demix_grid(const ExperimentConfig& c, DemixVariant v, Exec exec) {
  const bool l1 = v == DemixVariant::l1l1;
  if (c.experiment != (l1 ? Experiment::demix_l1l1_grid : Experiment::demix_s1l1_grid))
    throw DomainError("run_demix_grid: variant does not match the configured experiment");
  GridResult g = run_grid(
      c,
      [&](long k, long sy, Engine& eng) {
        return run_solver(l1 ? make_demix_l1l1_instance(c.d, k, sy, eng)
                             : make_demix_s1l1_instance(c.n, k, sy, eng),
                          c);
      },
      exec);
  g.key_name = l1 ? "sx" : "r";
  g.abscissa_name = "sy";
  const long dim = l1 ? c.d : c.n * c.n;
  g.scale = static_cast<double>(dim);
  const long kmax = l1 ? c.d : c.n;
  for (long k = 0; k <= kmax; ++k) {
    const double dx = l1 ? l1_theory(k, c.d) : s1_theory(k, c.n);
    g.theory.push_back({static_cast<double>(k), demix_boundary(dx, static_cast<double>(dim))});
  }
  finish(g);
  return g;
}

GridResult run_socp_feasibility(const ExperimentConfig& c, Exec exec) {
  if (c.experiment != Experiment::socp_feas) throw DomainError("run_socp_feasibility: wrong experiment");
  const ConeSpec cone = parse_cone(c.cone);
  if (cone.ambient_dimension() != c.d)
    throw DomainError("run_socp_feasibility: cone dimension differs from d");
  GridResult g = run_grid(
      c,
      [&](long, long m, Engine& eng) { return run_solver(make_feasibility_instance(cone, m, eng), c); },
      exec);
  g.key_name = "";
  g.abscissa_name = "m";
  g.scale = static_cast<double>(c.d);
  if (const auto cf = statdim_closed_form(cone)) g.delta = cf->value;
  // feasible exactly when the tail functional t_m is hit
  try {
    const IntrinsicVolumes iv = ivols_of(cone);
    if (!g.delta) g.delta = statdim_from_ivols(iv);
    for (long m : g.abscissas) g.predicted_success.push_back(tail(iv, m));
  } catch (const DomainError&) {
    // no intrinsic-volume formula for this cone; the overlay is the statdim alone
  }
  if (g.delta) g.theory.push_back({0.0, *g.delta});
  finish(g);
  return g;
}

GridResult run_vectors_from_lists(const ExperimentConfig& c, Exec exec) {
  if (c.experiment != Experiment::vectors_from_lists)
    throw DomainError("run_vectors_from_lists: wrong experiment");
  GridResult g = run_grid(
      c, [&](long, long m, Engine& eng) { return run_solver(make_perm_instance(c.d, m, eng), c); },
      exec);
  g.key_name = "";
  g.abscissa_name = "m";
  g.scale = static_cast<double>(c.d);
  g.delta = static_cast<double>(c.d) - statdim_permutahedron(c.d, false);
  g.theory.push_back({0.0, *g.delta});
  finish(g);
  return g;
}

GridResult run_experiment(const ExperimentConfig& c, Exec exec) {
  switch (c.experiment) {
    case Experiment::l1_grid:
      return run_l1_grid(c, exec);
    case Experiment::s1_grid:
      return run_s1_grid(c, exec);
    case Experiment::demix_l1l1_grid:
      return run_demix_grid(c, DemixVariant::l1l1, exec);
    case Experiment::demix_s1l1_grid:
      return run_demix_grid(c, DemixVariant::s1l1, exec);
    case Experiment::socp_feas:
      return run_socp_feasibility(c, exec);
    case Experiment::vectors_from_lists:
      return run_vectors_from_lists(c, exec);
  }
  throw DomainError("run_experiment: unknown experiment");
}

}  // namespace conelab
