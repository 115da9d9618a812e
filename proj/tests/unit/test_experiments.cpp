#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "conelab/experiments.hpp"

using namespace conelab;

namespace {

ExperimentConfig small_l1() {
  ExperimentConfig c = default_config(Experiment::l1_grid);
  c.d = 12;
  c.reps = 3;
  c.keys = {1, 7, 3};
  c.abscissas = {0, 12, 2};
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Largest drop against the expected direction, in pooled binomial standard
// errors, between neighbouring cells of one column.
double worst_monotonicity_breach(const GridResult& g, double orientation) {
  double worst = 0.0;
  for (std::size_t k = 0; k < g.keys.size(); ++k)
    for (std::size_t a = 0; a + 1 < g.abscissas.size(); ++a) {
      const GridCell& lo = g.cell(k, a);
      const GridCell& hi = g.cell(k, a + 1);
      const double p1 = double(lo.successes) / lo.trials, p2 = double(hi.successes) / hi.trials;
      const double drop = orientation * (p1 - p2);
      if (drop <= 0.0) continue;
      const double pool = double(lo.successes + hi.successes) / (lo.trials + hi.trials);
      const double se = std::sqrt(pool * (1 - pool) * (1.0 / lo.trials + 1.0 / hi.trials));
      worst = std::max(worst, se > 0.0 ? drop / se : 1e300);
    }
  return worst;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("experiment names round trip") {
  for (Experiment e : {Experiment::l1_grid, Experiment::s1_grid, Experiment::demix_l1l1_grid,
                       Experiment::demix_s1l1_grid, Experiment::socp_feas, Experiment::vectors_from_lists})
    CHECK(experiment_from_string(to_string(e)) == e);
  CHECK_THROWS_AS(experiment_from_string("nope"), DomainError);
}

TEST_CASE("ranges") {
  CHECK(IntRange{0, 10, 5}.values() == std::vector<long>{0, 5, 10});
  CHECK(IntRange{1, 10, 4}.values() == std::vector<long>{1, 5, 9});
  CHECK(IntRange{3, 3, 1}.values() == std::vector<long>{3});
}

TEST_CASE("config parsing") {
  const ExperimentConfig c = parse_config("# comment\nd = 20\nreps=4  # trailing\nseed = 9\n", Experiment::l1_grid);
  CHECK(c.d == 20);
  CHECK(c.reps == 4);
  CHECK(c.master_seed == 9);
  // ranges follow d when not given
  CHECK(c.keys.hi == 20);
  CHECK(c.abscissas.hi == 20);
  const ExperimentConfig k = parse_config("d = 20\nkey_min = 2\nkey_max = 6\nkey_step = 2\n", Experiment::l1_grid);
  CHECK(k.keys.values() == std::vector<long>{2, 4, 6});
  const ExperimentConfig s = parse_config("d = 30\n", Experiment::socp_feas);
  CHECK(parse_cone(s.cone).ambient_dimension() == 30);
  CHECK(parse_config("tol = 1e-7\nmax_iters = 500\n", Experiment::s1_grid).solver.max_iters == 500);

  for (const char* bad : {"d = 10\nd = 12\n", "bogus = 1\n", "d = ten\n", "d\n", "reps = 0\n", "d = 500\n",
                          "experiment = s1_grid\n", "key_max = 99\n", "m_min = 5\nm_max = 2\n"})
    CHECK_THROWS_AS(parse_config(bad, Experiment::l1_grid), DomainError);
  CHECK_NOTHROW(parse_config("d = 500\nallow_large = true\n", Experiment::l1_grid));
  CHECK_THROWS_AS(parse_config("d = 40\ncone = orthant(30)\n", Experiment::socp_feas).validate(), DomainError);

  // echo is ordered and complete enough to reproduce the run
  const auto entries = config_entries(c);
  REQUIRE(!entries.empty());
  CHECK(entries.front().first == "experiment");
}

TEST_CASE("stream ids depend on every coordinate") {
  const auto a = cell_stream_id(Experiment::l1_grid, 3, 10, 0);
  CHECK(a == cell_stream_id(Experiment::l1_grid, 3, 10, 0));
  CHECK(a != cell_stream_id(Experiment::l1_grid, 3, 10, 1));
  CHECK(a != cell_stream_id(Experiment::l1_grid, 3, 11, 0));
  CHECK(a != cell_stream_id(Experiment::l1_grid, 4, 10, 0));
  CHECK(a != cell_stream_id(Experiment::s1_grid, 3, 10, 0));
}

TEST_CASE("serial and parallel runs write identical bytes") {
  const ExperimentConfig c = small_l1();
  const GridResult a = run_l1_grid(c, Exec::serial);
  const GridResult b = run_l1_grid(c, Exec::parallel);
  CHECK(grid_csv(a) == grid_csv(b));
  CHECK(summary_json(a) == summary_json(b));
  CHECK(heatmap_svg(a) == heatmap_svg(b));
  // a different seed changes the draws
  ExperimentConfig c2 = c;
  c2.master_seed = 2;
  CHECK(summary_json(run_l1_grid(c2)) != summary_json(a));
}

TEST_CASE("grid shape and edge cells") {
  const GridResult g = run_l1_grid(small_l1());
  CHECK(g.cells.size() == 3 * 7);
  for (const GridCell& cell : g.cells) {
    CHECK(cell.trials == 3);
    CHECK(cell.successes <= cell.trials);
    if (cell.abscissa == 0) CHECK(cell.successes == 0);
    if (cell.abscissa == 12) CHECK(cell.successes == 3);
  }
  CHECK(g.fits.size() == 3);
  CHECK(g.theory.size() == 13);

  // s = d can only succeed at m = d
  ExperimentConfig full = small_l1();
  full.d = 8;
  full.keys = {8, 8, 1};
  full.abscissas = {0, 8, 1};
  for (const GridCell& cell : run_l1_grid(full).cells) CHECK(cell.successes == (cell.abscissa == 8 ? 3 : 0));

  // a zero-rank matrix is recovered from any number of measurements
  ExperimentConfig s1 = default_config(Experiment::s1_grid);
  s1.n = 4;
  s1.reps = 2;
  s1.keys = {0, 0, 1};
  s1.abscissas = {1, 16, 5};
  for (const GridCell& cell : run_s1_grid(s1).cells) CHECK(cell.successes == 2);

  // with y0 = 0 nothing needs separating
  ExperimentConfig dm = default_config(Experiment::demix_l1l1_grid);
  dm.d = 16;
  dm.reps = 2;
  dm.keys = {0, 4, 4};
  dm.abscissas = {0, 0, 1};
  for (const GridCell& cell : run_demix_grid(dm, DemixVariant::l1l1).cells) CHECK(cell.successes == 2);

  // lists: m = d pins the vector
  ExperimentConfig li = default_config(Experiment::vectors_from_lists);
  li.d = 10;
  li.reps = 3;
  li.abscissas = {10, 10, 1};
  const GridResult lg = run_vectors_from_lists(li);
  CHECK(lg.cells.front().successes == 3);
  CHECK(std::abs(*lg.delta - (10.0 - 7381.0 / 2520.0)) < 1e-12);
}

TEST_CASE("outputs") {
  const GridResult g = run_l1_grid(small_l1());
  const std::string csv = grid_csv(g);
  CHECK(csv.rfind("s,m,successes,trials,solver_failures\n", 0) == 0);
  const auto j = nlohmann::json::parse(summary_json(g));
  CHECK(j["experiment"] == "l1_grid");
  CHECK(j["version"] == kConelabVersion);
  CHECK(j["fits"].size() == 3);
  CHECK(j["totals"]["trials"] == 63);
  CHECK(!j.contains("wall_seconds"));
  const std::string svg = heatmap_svg(g);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "conelab_unit_outputs";
  std::filesystem::remove_all(dir);
  emit_outputs(g, dir);
  CHECK(slurp(dir / "grid.csv") == csv);
  CHECK(slurp(dir / "summary.json") == summary_json(g));
  CHECK(std::filesystem::exists(dir / "heatmap.svg"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("empty results still serialise") {
  GridResult g;
  g.config = default_config(Experiment::socp_feas);
  g.abscissa_name = "m";
  g.scale = 1.0;
  CHECK(grid_csv(g) == "m,successes,trials,solver_failures\n");
  const auto j = nlohmann::json::parse(summary_json(g));
  CHECK(j["fits"].empty());
  CHECK(j["delta"].is_null());
  CHECK(heatmap_svg(g).find("</svg>") != std::string::npos);
  CHECK(read_grid_csv(grid_csv(g)).empty());
}

TEST_CASE("csv round trip") {
  const GridResult g = run_l1_grid(small_l1());
  const auto cols = read_grid_csv(grid_csv(g));
  REQUIRE(cols.size() == 3);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    CHECK(cols[k].key == g.keys[k]);
    CHECK(cols[k].orientation == 1.0);
    REQUIRE(cols[k].points.size() == g.abscissas.size());
    for (std::size_t a = 0; a < g.abscissas.size(); ++a) {
      CHECK(cols[k].points[a].successes == g.cell(k, a).successes);
      CHECK(cols[k].points[a].trials == g.cell(k, a).trials);
    }
    const LogisticFit f = fit_empirical_transition(cols[k].points, cols[k].orientation);
    CHECK(f.mu == g.fits[k].fit.mu);
  }
  CHECK(read_grid_csv("sx,sy,successes,trials,solver_failures\n1,2,3,4,0\n").front().orientation == -1.0);
  CHECK_THROWS_AS(read_grid_csv(""), DomainError);
  CHECK_THROWS_AS(read_grid_csv("a,b\n"), DomainError);
  CHECK_THROWS_AS(read_grid_csv("m,successes,trials,solver_failures\n1,x,3,0\n"), DomainError);
  CHECK_THROWS_AS(read_grid_csv("m,successes,trials,solver_failures\n1,5,3,0\n"), DomainError);
}

TEST_CASE("synthetic logistic column recovers its centre") {
  // expected counts of a logistic with centre 50 and slope 0.2, 400 trials per point
  std::vector<BinomialPoint> pts;
  for (int x = 20; x <= 80; x += 4) {
    const double p = 1.0 / (1.0 + std::exp(-0.2 * (x - 50.0)));
    pts.push_back({double(x), std::lround(400 * p), 400});
  }
  const LogisticFit f = fit_empirical_transition(pts);
  CHECK(std::abs(f.mu - 50.0) <= 0.5);
  CHECK(std::abs(f.beta1 - 0.2) <= 0.02);
  CHECK_THROWS_AS(fit_empirical_transition(std::span(pts).first(3)), DomainError);
  // falling columns
  for (BinomialPoint& p : pts) p.successes = p.trials - p.successes;
  CHECK(std::abs(fit_empirical_transition(pts, -1.0).mu - 50.0) <= 0.5);
}

TEST_CASE("monotone success on a small grid") {
  ExperimentConfig c = small_l1();
  c.reps = 12;
  CHECK(worst_monotonicity_breach(run_l1_grid(c), 1.0) <= 3.0);
  ExperimentConfig dm = default_config(Experiment::demix_l1l1_grid);
  dm.d = 20;
  dm.reps = 12;
  dm.keys = {2, 6, 4};
  dm.abscissas = {0, 16, 2};
  CHECK(worst_monotonicity_breach(run_demix_grid(dm, DemixVariant::l1l1), -1.0) <= 3.0);
}

// Slow: every experiment at its desk-scale defaults. Registered as its own test.
TEST_CASE("desk-scale defaults track theory" * doctest::test_suite("desk")) {
  for (Experiment e : {Experiment::l1_grid, Experiment::s1_grid, Experiment::demix_l1l1_grid,
                       Experiment::demix_s1l1_grid, Experiment::socp_feas, Experiment::vectors_from_lists}) {
    CAPTURE(to_string(e));
    const GridResult g = run_experiment(default_config(e));
    const double orientation = g.abscissa_name == "sy" || e == Experiment::socp_feas ? -1.0 : 1.0;
    CHECK(worst_monotonicity_breach(g, orientation) <= 3.0);
    int mid = 0;
    for (const ColumnFit& f : g.fits) {
      if (!f.mid_range) continue;
      ++mid;
      CAPTURE(f.key);
      CHECK(std::abs(f.fit.mu - f.theory) <= 0.08 * g.scale);
      CHECK(f.fit.width_5_95() <= 8.0 * std::sqrt(g.scale));
    }
    if (e != Experiment::socp_feas && e != Experiment::vectors_from_lists) CHECK(mid > 0);
  }
}

}
