#include "conelab/experiments.hpp"

namespace conelab {

LogisticFit fit_empirical_transition(std::span<const BinomialPoint> column, double orientation) {
  if (column.size() < 4) throw DomainError("fit_empirical_transition: need at least 4 points");
  return logistic_fit(column, orientation);
}

void fit_columns(GridResult& g) {
  g.fits.clear();
  const std::size_t na = g.abscissas.size();
  if (na < 4) return;
  // feasibility and demixing success fall along the abscissa
  const bool falls = g.abscissa_name == "sy" || g.config.experiment == Experiment::socp_feas;
  const double orientation = falls ? -1.0 : 1.0;
  for (std::size_t ki = 0; ki < g.keys.size(); ++ki) {
    std::vector<BinomialPoint> pts;
    pts.reserve(na);
    for (std::size_t ai = 0; ai < na; ++ai) {
      const GridCell& c = g.cell(ki, ai);
      pts.push_back({static_cast<double>(c.abscissa), c.successes, c.trials});
    }
    ColumnFit cf;
    cf.key = g.keys[ki];
    cf.fit = fit_empirical_transition(pts, orientation);
    if (g.delta) {
      cf.theory = *g.delta;
    } else {
      for (const TheoryPoint& t : g.theory)
        if (t.key == static_cast<double>(cf.key)) cf.theory = t.abscissa;
    }
    cf.mid_range = cf.theory >= 0.2 * g.scale && cf.theory <= 0.8 * g.scale;
    g.fits.push_back(cf);
  }
}

}  // namespace conelab
