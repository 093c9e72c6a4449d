#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nlcn/linalg.hpp"
#include "nlcn/manufactured.hpp"
#include "nlcn/stepper.hpp"

namespace nlcn {

/// Parameters of one experiment. Loaded from a flat `key = value` file,
/// then overridden by command-line flags.
struct RunConfig {
  CaseId case_id = CaseId::Example1;
  int dim = 0;  ///< 0: take the case's dimension
  int k = 2;
  int n = 100;  ///< elements (1D) or squares per side (2D)
  double delta = 1e-3;
  double t_end = 0.0;  ///< 0: the case's default horizon
  double solver_tol = 1e-12;
  SolverMethod solver_method = SolverMethod::ConjugateGradient;
  double guard_floor = 1e-12;
  double guard_ceiling = 1e12;
  GuardPolicy guard_policy = GuardPolicy::Warn;
  std::string out_dir = "out";
  std::vector<double> snapshots;
  std::vector<int> n_list;           ///< sweep-h ladder; empty selects default_space_ladder
  std::vector<double> delta_list;    ///< sweep-dt ladder

  /// Throws InvalidConfig on out-of-range values or a dim/case mismatch.
  void validate() const;

  [[nodiscard]] int resolved_dim() const;
  [[nodiscard]] double resolved_t_end() const;
  [[nodiscard]] std::vector<int> resolved_n_list() const;
};

/// Halving ladder of element counts per side for a spatial sweep at degree k.
std::vector<int> default_space_ladder(CaseId id, int k);

/// Per-case defaults for the shipped experiments.
RunConfig preset_config(CaseId id);

/// Applies one `key = value` setting. Unknown keys are rejected.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses `key = value` lines; '#' starts a comment. Settings apply on top of `base`.
RunConfig parse_config_text(std::string_view text, RunConfig base);

RunConfig load_config_file(const std::string& path, RunConfig base);

/// Flat `key = value` rendering that parses back to the same config.
std::string render_config(const RunConfig& config);

std::vector<double> parse_double_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

}  // namespace nlcn
