#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlcn/config.hpp"
#include "nlcn/manufactured.hpp"
#include "nlcn/stepper.hpp"

namespace nlcn {

struct RunReport {
  RunConfig config;
  double h = 0.0;
  std::size_t n_nodes = 0;
  double t_end = 0.0;
  double final_error = 0.0;  ///< ||U_N - u(., t_end)||_{L2}
  Trajectory trajectory;
  SpacePtr space;
};

/// Builds the mesh and space for a config (interval [0,1] or unit square).
SpacePtr build_space(const RunConfig& config);

/// Runs the scheme on the config's manufactured case. `precomputed` skips
/// rebuilding the case (and re-solving alpha).
RunReport run_solve(const RunConfig& config, const ManufacturedCase* precomputed = nullptr);

enum class SweepKind { Space, Time };

struct SweepRow {
  int k = 0;
  double h = 0.0;
  double delta = 0.0;
  double t_end = 0.0;
  double error_l2 = 0.0;
  std::optional<double> pairwise_rate;  ///< log2(e_{i-1} / e_i); empty on the first row
  std::string failure;                  ///< nonempty when the run for this row failed
};

struct SweepResult {
  CaseId case_id = CaseId::Example1;
  SweepKind kind = SweepKind::Space;
  std::vector<SweepRow> rows;
  std::optional<double> fitted_slope;  ///< least squares of log e against log h (or log delta)
};

/// Fills pairwise rates and the fitted slope from the stored errors. Rates
/// touching a zero or failed error are left undefined.
void compute_rates(SweepResult& sweep);

/// Spatial refinement study over element counts (sorted coarse to fine).
SweepResult sweep_h(const RunConfig& base, std::vector<int> n_list);

/// Temporal refinement study over step sizes (sorted coarse to fine).
SweepResult sweep_delta(const RunConfig& base, std::vector<double> delta_list);

struct EnergyRow {
  CaseId case_id = CaseId::Example1;
  double t = 0.0;
  double energy = 0.0;
  double log_energy = 0.0;  ///< -inf marks an extinct (exactly zero) field
};

struct EnergyTable {
  std::vector<EnergyRow> rows;
};

EnergyTable energy_study(const std::vector<RunConfig>& configs);

}  // namespace nlcn
