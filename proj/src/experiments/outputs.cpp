#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "conelab/experiments.hpp"

namespace conelab {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

// Axis mapping where value v occupies a band of width `step` centred on it.
struct Axis {
  double lo = 0.0, hi = 1.0;
  double pixel_lo = 0.0, pixel_hi = 1.0;
  double map(double v) const { return pixel_lo + (v - lo) / (hi - lo) * (pixel_hi - pixel_lo); }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

Axis band_axis(const std::vector<long>& values, double p0, double p1) {
  Axis a;
  a.pixel_lo = p0;
  a.pixel_hi = p1;
  if (values.empty()) return a;
  const double step = values.size() > 1 ? static_cast<double>(values[1] - values[0]) : 1.0;
  a.lo = static_cast<double>(values.front()) - 0.5 * step;
  a.hi = static_cast<double>(values.back()) + 0.5 * step;
  return a;
}

}  // namespace

std::string grid_csv(const GridResult& r) {
  std::ostringstream out;
  const bool keyed = !r.key_name.empty();
  if (keyed) out << csv_field(r.key_name) << ',';
  out << csv_field(r.abscissa_name.empty() ? "m" : r.abscissa_name)
      << ",successes,trials,solver_failures\n";
  for (const GridCell& c : r.cells) {
    if (keyed) out << c.key << ',';
    out << c.abscissa << ',' << c.successes << ',' << c.trials << ',' << c.solver_failures << '\n';
  }
  return out.str();
}

std::string summary_json(const GridResult& r) {
  nlohmann::json j;
  j["experiment"] = to_string(r.config.experiment);
  j["version"] = r.version;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : config_entries(r.config)) cfg[k] = v;
  j["config"] = cfg;
  j["key_name"] = r.key_name;
  j["abscissa_name"] = r.abscissa_name;
  j["scale"] = r.scale;
  j["delta"] = r.delta ? number_or_null(*r.delta) : nlohmann::json(nullptr);

  long trials = 0, successes = 0, failures = 0;
  for (const GridCell& c : r.cells) {
    trials += c.trials;
    successes += c.successes;
    failures += c.solver_failures;
  }
  j["totals"] = {{"trials", trials}, {"successes", successes}, {"solver_failures", failures}};

  nlohmann::json fits = nlohmann::json::array();
  for (const ColumnFit& f : r.fits) {
    const double err = std::abs(f.fit.mu - f.theory);
    fits.push_back({{"key", f.key},
                    {"mu", number_or_null(f.fit.mu)},
                    {"beta0", number_or_null(f.fit.beta0)},
                    {"beta1", number_or_null(f.fit.beta1)},
                    {"separated", f.fit.separated},
                    {"width_5_95", number_or_null(f.fit.width_5_95())},
                    {"theory", number_or_null(f.theory)},
                    {"mid_range", f.mid_range},
                    {"abs_error", number_or_null(err)},
                    {"rel_error", number_or_null(r.scale > 0.0 ? err / r.scale : NAN)}});
  }
  j["fits"] = fits;

  nlohmann::json theory = nlohmann::json::array();
  for (const TheoryPoint& t : r.theory)
    theory.push_back({number_or_null(t.key), number_or_null(t.abscissa)});
  j["theory"] = theory;
  nlohmann::json pred = nlohmann::json::array();
  for (std::size_t i = 0; i < r.predicted_success.size() && i < r.abscissas.size(); ++i)
    pred.push_back({r.abscissas[i], number_or_null(r.predicted_success[i])});
  j["predicted_success"] = pred;
  return j.dump(2) + "\n";
}

std::string heatmap_svg(const GridResult& r) {
  constexpr double W = 600.0, H = 600.0, M = 60.0;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  const Axis ax = band_axis(r.keys, M, W - M);
  const Axis ay = band_axis(r.abscissas, H - M, M);  // abscissa grows upwards

  for (const GridCell& c : r.cells) {
    const double frac = c.trials > 0 ? static_cast<double>(c.successes) / static_cast<double>(c.trials) : 0.0;
    const int level = static_cast<int>(std::lround(255.0 * frac));
    const double kstep = r.keys.size() > 1 ? static_cast<double>(r.keys[1] - r.keys[0]) : 1.0;
    const double astep = r.abscissas.size() > 1 ? static_cast<double>(r.abscissas[1] - r.abscissas[0]) : 1.0;
    const double x0 = ax.map(static_cast<double>(c.key) - 0.5 * kstep);
    const double x1 = ax.map(static_cast<double>(c.key) + 0.5 * kstep);
    const double y0 = ay.map(static_cast<double>(c.abscissa) + 0.5 * astep);
    const double y1 = ay.map(static_cast<double>(c.abscissa) - 0.5 * astep);
    out << "<rect x=\"" << fixed(x0) << "\" y=\"" << fixed(y0) << "\" width=\"" << fixed(x1 - x0)
        << "\" height=\"" << fixed(y1 - y0) << "\" fill=\"rgb(" << level << ',' << level << ','
        << level << ")\"/>\n";
  }

  std::string pts;
  if (r.delta && !r.keys.empty()) {
    // one-dimensional run: the statistical dimension as a horizontal line
    if (ay.contains(*r.delta))
      pts = fixed(ax.pixel_lo) + ',' + fixed(ay.map(*r.delta)) + ' ' + fixed(ax.pixel_hi) + ',' +
            fixed(ay.map(*r.delta));
  } else {
    for (const TheoryPoint& t : r.theory) {
      if (!ax.contains(t.key) || !ay.contains(t.abscissa)) continue;
      if (!pts.empty()) pts += ' ';
      pts += fixed(ax.map(t.key)) + ',' + fixed(ay.map(t.abscissa));
    }
  }
  if (!pts.empty())
    out << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";

  out << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\""
      << H - 2 * M << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 20 << "\" text-anchor=\"middle\" font-size=\"14\">"
      << (r.key_name.empty() ? "" : r.key_name) << "</text>\n";
  out << "<text x=\"20\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"14\">"
      << r.abscissa_name << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

void emit_outputs(const GridResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  const std::pair<const char*, std::string> files[] = {
      {"grid.csv", grid_csv(r)}, {"summary.json", summary_json(r)}, {"heatmap.svg", heatmap_svg(r)}};
  for (const auto& [name, body] : files) {
    const auto path = dir / name;
    std::ofstream f(path, std::ios::binary);
    f << body;
    f.close();
    if (!f) throw std::runtime_error("cannot write " + path.string());
  }
}

std::vector<CsvColumn> read_grid_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw DomainError("grid csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::size_t fields = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (fields != 4 && fields != 5)
    throw DomainError("grid csv: expected [key,]abscissa,successes,trials,solver_failures");
  const bool keyed = fields == 5;
  const std::size_t name_at = keyed ? line.find(',') + 1 : 0;
  const std::string abscissa = line.substr(name_at, line.find(',', name_at) - name_at);
  const double orientation = abscissa == "sy" ? -1.0 : 1.0;
  std::vector<CsvColumn> cols;
  std::map<long, std::size_t> where;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<long> v;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stol(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw DomainError("grid csv line " + std::to_string(lineno) + ": non-integer field");
      }
    }
    if (v.size() != fields) throw DomainError("grid csv line " + std::to_string(lineno) + ": wrong field count");
    const long key = keyed ? v[0] : 0;
    const std::size_t o = keyed ? 1 : 0;
    if (v[o + 1] < 0 || v[o + 2] < v[o + 1])
      throw DomainError("grid csv line " + std::to_string(lineno) + ": successes exceed trials");
    auto [it, fresh] = where.emplace(key, cols.size());
    if (fresh) cols.push_back({key, orientation, {}});
    cols[it->second].points.push_back({static_cast<double>(v[o]), v[o + 1], v[o + 2]});
  }
  return cols;
}

}  // namespace conelab
