#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conelab/logistic.hpp"
#include "conelab/parallel.hpp"
#include "conelab/solvers.hpp"

namespace conelab {

inline constexpr const char* kConelabVersion = "0.1.0";

enum class Experiment { l1_grid, s1_grid, demix_l1l1_grid, demix_s1l1_grid, socp_feas, vectors_from_lists };

std::string to_string(Experiment e);
/// Throws DomainError for an unknown name.
Experiment experiment_from_string(std::string_view name);

/// Inclusive integer range lo, lo + step, ..., <= hi.
struct IntRange {
  long lo = 0;
  long hi = 0;
  long step = 1;
  std::vector<long> values() const;
};

/// Desk-scale caps on d and n, lifted by allow_large.
inline constexpr long kMaxDeskDimension = 128;
inline constexpr long kMaxDeskMatrixSide = 20;

struct ExperimentConfig {
  Experiment experiment = Experiment::l1_grid;
  long d = 40;  // ambient dimension (vector experiments)
  long n = 12;  // matrix side (matrix experiments)
  long reps = 25;
  std::uint64_t master_seed = 1;
  IntRange keys;       // s, r or s_x; unused by the one-dimensional experiments
  IntRange abscissas;  // m, or s_y for demixing
  std::string cone;    // socp_feas only, in the cone-spec grammar
  SolverParams solver;
  FeasibilityParams feasibility;
  LpParams lp;
  bool allow_large = false;
  std::string out_dir = "out";

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// Desk-scale defaults for an experiment.
ExperimentConfig default_config(Experiment e);

/// Reads flat "key = value" text ('#' starts a comment) on top of the
/// defaults for `e`. If the text sets `experiment`, it must agree with `e`.
/// Ranges not given explicitly are re-derived from d or n. Keys:
///   d n reps seed cone out allow_large
///   key_min key_max key_step m_min m_max m_step
///   tol max_iters feas_tol feas_max_iters stall_window stall_rel
///   lp_max_rounds
ExperimentConfig parse_config(std::string_view text, Experiment e);
/// Echo of every resolved key in a fixed order.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c);

struct GridCell {
  long key = 0;
  long abscissa = 0;
  long successes = 0;
  long trials = 0;
  long solver_failures = 0;  // iteration caps and solver exceptions, counted as failures
  std::uint64_t stream_id = 0;
};

struct ColumnFit {
  long key = 0;
  LogisticFit fit;
  double theory = 0.0;     // predicted 50% abscissa
  bool mid_range = false;  // theory between 0.2 and 0.8 of the abscissa scale
};

struct TheoryPoint {
  double key = 0.0;
  double abscissa = 0.0;
};

struct GridResult {
  ExperimentConfig config;
  std::string key_name;       // empty for one-dimensional experiments
  std::string abscissa_name;  // "m" or "sy"
  double scale = 0.0;         // abscissa scale (d, n^2) used for relative errors
  std::vector<long> keys;
  std::vector<long> abscissas;
  std::vector<GridCell> cells;  // key-major
  std::vector<ColumnFit> fits;
  std::vector<TheoryPoint> theory;  // predicted transition at every integer key
  std::optional<double> delta;      // statistical dimension for one-dimensional runs
  std::vector<double> predicted_success;  // exact success probability per abscissa, if known
  std::string version;
  double wall_seconds = 0.0;  // reported by the CLI, never written to disk

  const GridCell& cell(std::size_t key_index, std::size_t abscissa_index) const;
};

/// Substream id of one trial: hash of (experiment tag, key, abscissa, rep).
std::uint64_t cell_stream_id(Experiment e, long key, long abscissa, long rep);

GridResult run_l1_grid(const ExperimentConfig& c, Exec exec = Exec::parallel);
GridResult run_s1_grid(const ExperimentConfig& c, Exec exec = Exec::parallel);
enum class DemixVariant { l1l1, s1l1 };
GridResult run_demix_grid(const ExperimentConfig& c, DemixVariant v, Exec exec = Exec::parallel);
GridResult run_socp_feasibility(const ExperimentConfig& c, Exec exec = Exec::parallel);
GridResult run_vectors_from_lists(const ExperimentConfig& c, Exec exec = Exec::parallel);
/// Dispatches on c.experiment.
GridResult run_experiment(const ExperimentConfig& c, Exec exec = Exec::parallel);

/// Logistic fit of one column. Success rises with m in the recovery and
/// feasibility grids (orientation +1) and falls with s_y in the demixing
/// grids (-1). Throws DomainError with fewer than 4 points.
LogisticFit fit_empirical_transition(std::span<const BinomialPoint> column, double orientation = 1.0);

/// Fills result.fits from the cells, one fit per key.
void fit_columns(GridResult& result);

/// grid.csv, summary.json and heatmap.svg. The writers are pure functions of
/// the result so repeated runs produce identical bytes.
std::string grid_csv(const GridResult& r);
std::string summary_json(const GridResult& r);
std::string heatmap_svg(const GridResult& r);
/// Writes the three files into dir (created if missing). Throws
/// std::runtime_error on I/O failure.
void emit_outputs(const GridResult& r, const std::filesystem::path& dir);

/// Columns read back from a grid.csv.
struct CsvColumn {
  long key = 0;
  double orientation = 1.0;  // -1 when the abscissa column is named sy
  std::vector<BinomialPoint> points;
};
std::vector<CsvColumn> read_grid_csv(std::string_view text);

}  // namespace conelab
