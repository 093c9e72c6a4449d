#include "nlcn/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "nlcn/assembly.hpp"
#include "nlcn/error.hpp"

namespace nlcn {

namespace fs = std::filesystem;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& os) {
  os << "case,k,h,delta,t_end,error_l2,pairwise_rate\n";
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const auto& r = sweep.rows[i];
    os << to_string(sweep.case_id) << ',' << r.k << ',' << format_double(r.h) << ',' << format_double(r.delta)
       << ',' << format_double(r.t_end) << ',' << format_double(r.error_l2) << ',';
    if (r.pairwise_rate) os << format_double(*r.pairwise_rate);
    else if (i > 0) os << "nan";
    os << '\n';
  }
}

void write_energy_csv(const EnergyTable& table, std::ostream& os) {
  os << "case,t,energy,log_energy\n";
  for (const auto& r : table.rows)
    os << to_string(r.case_id) << ',' << format_double(r.t) << ',' << format_double(r.energy) << ','
       << format_double(r.log_energy) << '\n';
}

void write_history_csv(const RunReport& report, std::ostream& os) {
  os << "step,t,energy,coefficient,guard_status\n";
  for (const auto& r : report.trajectory.records)
    os << r.step << ',' << format_double(r.t) << ',' << format_double(r.energy) << ','
       << format_double(r.coefficient) << ',' << to_string(r.status) << '\n';
}

void write_snapshots_csv(const RunReport& report, std::ostream& os) {
  os << "requested_t,step,t,x,y,value\n";
  for (const auto& snap : report.trajectory.snapshots) {
    const auto& nodes = snap.field.space->nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i)
      os << format_double(snap.requested_time) << ',' << snap.step << ',' << format_double(snap.t) << ','
         << format_double(nodes[i][0]) << ',' << format_double(nodes[i][1]) << ','
         << format_double(snap.field.values[i]) << '\n';
  }
}

namespace {

struct Axis {
  bool log = false;
  double lo = 0.0, hi = 1.0;  // in transformed units

  [[nodiscard]] double transform(double v) const { return log ? std::log10(v) : v; }
};

bool plottable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

Axis make_axis(const std::vector<double>& values, bool log) {
  Axis a;
  a.log = log;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : values) {
    const double t = a.transform(v);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (log) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  a.lo = lo;
  a.hi = hi;
  return a;
}

std::vector<double> ticks(const Axis& a) {
  std::vector<double> out;
  if (a.log) {
    const double step = std::max(1.0, std::ceil((a.hi - a.lo) / 10.0));
    for (double t = a.lo; t <= a.hi + 1e-9; t += step) out.push_back(t);
    return out;
  }
  const double span = a.hi - a.lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  for (double t = std::ceil(a.lo / step) * step; t <= a.hi + 1e-9 * span; t += step) out.push_back(t);
  return out;
}

std::string tick_label(const Axis& a, double t) {
  char buf[32];
  if (a.log) std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(t)));
  else std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error(ErrorKind::IoFailure, "failed writing " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(ErrorKind::IoFailure, "cannot create output directory " + dir.string());
}

nlohmann::json config_json(const RunConfig& c) {
  return {{"case", std::string(to_string(c.case_id))},
          {"dim", c.resolved_dim()},
          {"k", c.k},
          {"n", c.n},
          {"delta", c.delta},
          {"t_end", c.resolved_t_end()},
          {"solver", std::string(to_string(c.solver_method))},
          {"solver_tol", c.solver_tol},
          {"guard_floor", c.guard_floor},
          {"guard_ceiling", c.guard_ceiling},
          {"guard_policy", std::string(to_string(c.guard_policy))},
          {"assembly_quadrature_degree", assembly_quadrature_degree(c.k)},
          {"error_quadrature_degree", error_quadrature_degree(c.k)}};
}

}  // namespace

void write_svg_chart(const ChartSpec& chart, std::ostream& os) {
  constexpr double width = 640, height = 440, left = 80, right = 170, top = 40, bottom = 60;
  const double pw = width - left - right, ph = height - top - bottom;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::vector<double> xs, ys;
  for (const auto& s : chart.series)
    for (const auto& [x, y] : s.points)
      if (plottable(x, chart.log_x) && plottable(y, chart.log_y)) {
        xs.push_back(x);
        ys.push_back(y);
      }
  const Axis ax = make_axis(xs, chart.log_x);
  const Axis ay = make_axis(ys, chart.log_y);
  const auto px = [&](double x) { return left + (ax.transform(x) - ax.lo) / (ax.hi - ax.lo) * pw; };
  const auto py = [&](double y) { return top + ph - (ay.transform(y) - ay.lo) / (ay.hi - ay.lo) * ph; };
  const auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(chart.title)
     << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(ax)) {
    const double x = left + (t - ax.lo) / (ax.hi - ax.lo) * pw;
    os << "<line x1=\"" << num(x) << "\" y1=\"" << top << "\" x2=\"" << num(x) << "\" y2=\"" << top + ph
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << num(x) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << tick_label(ax, t)
       << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double y = top + ph - (t - ay.lo) / (ay.hi - ay.lo) * ph;
    os << "<line x1=\"" << left << "\" y1=\"" << num(y) << "\" x2=\"" << left + pw << "\" y2=\"" << num(y)
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << tick_label(ay, t)
       << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
     << escape(chart.x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << top + ph / 2 << ")\">" << escape(chart.y_label) << "</text>\n";

  for (std::size_t si = 0; si < chart.series.size(); ++si) {
    const auto& s = chart.series[si];
    const char* color = colors[si % std::size(colors)];
    std::string path;
    for (const auto& [x, y] : s.points) {
      if (!plottable(x, chart.log_x) || !plottable(y, chart.log_y)) continue;
      path += (path.empty() ? "" : " ") + num(px(x)) + "," + num(py(y));
    }
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << path << "\"/>\n";
    if (s.points.size() <= 40)
      for (const auto& [x, y] : s.points)
        if (plottable(x, chart.log_x) && plottable(y, chart.log_y))
          os << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"" << color
             << "\"/>\n";
    const double ly = top + 16 + 18 * static_cast<double>(si);
    os << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 32 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + pw + 38 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
}

std::string sweep_file_stem(const SweepResult& sweep) {
  const int k = sweep.rows.empty() ? 0 : sweep.rows.front().k;
  return std::string(sweep.kind == SweepKind::Space ? "sweep_h_" : "sweep_dt_") + std::string(to_string(sweep.case_id)) +
         "_k" + std::to_string(k);
}

std::vector<fs::path> emit_sweep(const SweepResult& sweep, const RunConfig& config, const fs::path& dir) {
  ensure_dir(dir);
  SweepResult named = sweep;
  if (named.rows.empty()) named.rows.push_back({config.k, 0, 0, 0, 0, {}, {}});
  const std::string stem = sweep_file_stem(named);
  std::vector<fs::path> files;

  std::ostringstream csv;
  write_sweep_csv(sweep, csv);
  files.push_back(dir / (stem + ".csv"));
  write_text(files.back(), csv.str());

  ChartSpec chart;
  const bool space = sweep.kind == SweepKind::Space;
  chart.title = std::string(to_string(sweep.case_id)) + (space ? ": error vs h" : ": error vs delta") + ", k=" +
                std::to_string(config.k);
  chart.x_label = space ? "h" : "delta";
  chart.y_label = "L2 error at t_end";
  ChartSeries series;
  series.label = "k=" + std::to_string(config.k);
  for (const auto& r : sweep.rows) series.points.emplace_back(space ? r.h : r.delta, r.error_l2);
  chart.series.push_back(series);
  std::ostringstream svg;
  write_svg_chart(chart, svg);
  files.push_back(dir / (stem + ".svg"));
  write_text(files.back(), svg.str());

  nlohmann::json meta = config_json(config);
  meta["sweep"] = space ? "h" : "delta";
  nlohmann::json ladder = nlohmann::json::array();
  for (const auto& r : sweep.rows) ladder.push_back(space ? r.h : r.delta);
  meta[space ? "h_ladder" : "delta_ladder"] = ladder;
  if (sweep.fitted_slope) meta["fitted_slope"] = *sweep.fitted_slope;
  else meta["fitted_slope"] = nullptr;
  files.push_back(dir / (stem + ".meta.json"));
  write_text(files.back(), meta.dump(2) + "\n");
  return files;
}

std::vector<fs::path> emit_energy(const EnergyTable& table, const std::vector<RunConfig>& configs,
                                  const fs::path& dir) {
  ensure_dir(dir);
  std::vector<fs::path> files;
  std::ostringstream csv;
  write_energy_csv(table, csv);
  files.push_back(dir / "energy.csv");
  write_text(files.back(), csv.str());

  ChartSpec chart;
  chart.title = "log energy  log(int U^2)";
  chart.x_label = "t";
  chart.y_label = "log(int U^2)";
  chart.log_x = false;
  chart.log_y = false;
  std::map<CaseId, ChartSeries> by_case;
  for (const auto& r : table.rows) {
    auto& s = by_case[r.case_id];
    s.label = std::string(to_string(r.case_id));
    s.points.emplace_back(r.t, r.log_energy);
  }
  for (auto& [id, s] : by_case) chart.series.push_back(std::move(s));
  std::ostringstream svg;
  write_svg_chart(chart, svg);
  files.push_back(dir / "energy.svg");
  write_text(files.back(), svg.str());

  nlohmann::json meta = nlohmann::json::array();
  for (const auto& c : configs) meta.push_back(config_json(c));
  files.push_back(dir / "energy.meta.json");
  write_text(files.back(), meta.dump(2) + "\n");
  return files;
}

std::vector<fs::path> emit_run(const RunReport& report, const fs::path& dir) {
  ensure_dir(dir);
  const std::string stem = "solve_" + std::string(to_string(report.config.case_id));
  std::vector<fs::path> files;

  std::ostringstream history;
  write_history_csv(report, history);
  files.push_back(dir / (stem + "_history.csv"));
  write_text(files.back(), history.str());

  std::ostringstream snaps;
  write_snapshots_csv(report, snaps);
  files.push_back(dir / (stem + "_snapshots.csv"));
  write_text(files.back(), snaps.str());

  nlohmann::json meta = config_json(report.config);
  meta["h"] = report.h;
  meta["n_nodes"] = report.n_nodes;
  meta["final_error_l2"] = report.final_error;
  meta["extinct"] = report.trajectory.extinct;
  if (report.trajectory.first_guard_trip) meta["first_guard_trip_t"] = *report.trajectory.first_guard_trip;
  else meta["first_guard_trip_t"] = nullptr;
  files.push_back(dir / (stem + ".meta.json"));
  write_text(files.back(), meta.dump(2) + "\n");
  return files;
}

}  // namespace nlcn
