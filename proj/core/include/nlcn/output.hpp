#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nlcn/harness.hpp"

namespace nlcn {

/// 17 significant digits; infinities as "inf" / "-inf".
std::string format_double(double v);

// Header: case,k,h,delta,t_end,error_l2,pairwise_rate
void write_sweep_csv(const SweepResult& sweep, std::ostream& os);

// Header: case,t,energy,log_energy
void write_energy_csv(const EnergyTable& table, std::ostream& os);

// Header: step,t,energy,coefficient,guard_status
void write_history_csv(const RunReport& report, std::ostream& os);

// Header: requested_t,step,t,x,y,value
void write_snapshots_csv(const RunReport& report, std::ostream& os);

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = true;
  bool log_y = true;
  std::vector<ChartSeries> series;
};

/// Self-contained SVG line chart. Non-finite points (and nonpositive ones on
/// log axes) are skipped.
void write_svg_chart(const ChartSpec& chart, std::ostream& os);

/// e.g. "sweep_h_example1_k2" or "sweep_dt_example3_k3".
std::string sweep_file_stem(const SweepResult& sweep);

std::vector<std::filesystem::path> emit_sweep(const SweepResult& sweep, const RunConfig& config,
                                              const std::filesystem::path& dir);
std::vector<std::filesystem::path> emit_energy(const EnergyTable& table, const std::vector<RunConfig>& configs,
                                               const std::filesystem::path& dir);
std::vector<std::filesystem::path> emit_run(const RunReport& report, const std::filesystem::path& dir);

}  // namespace nlcn
