#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "nlcn/error.hpp"
#include "nlcn/harness.hpp"
#include "nlcn/output.hpp"

using namespace nlcn;

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct ConfigFlags {
  std::string config_path;
  Overrides overrides;
};

// Flags are recorded in the order given and replayed on top of the config
// file, so later flags win over earlier ones and over the file.
void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->set_help_flag("--help", "print this help message and exit");  // frees --h for the mesh width
  cmd->add_option("--config", flags.config_path, "key = value config file");
  const std::pair<const char*, const char*> keys[] = {
      {"case", "example1 | example2 | example3"},
      {"dim", "spatial dimension (checked against the case)"},
      {"k", "polynomial degree 1..3"},
      {"n", "elements (1D) or squares per side (2D)"},
      {"h", "mesh width; sets n = round(1/h)"},
      {"delta", "time step"},
      {"t_end", "final time"},
      {"solver_tol", "relative residual tolerance"},
      {"solver", "cg | banded"},
      {"guard_floor", "lower guard on the coefficient"},
      {"guard_ceiling", "upper guard on the coefficient"},
      {"guard_policy", "warn | abort"},
      {"out_dir", "output directory"},
      {"snapshots", "comma-separated snapshot times"},
      {"n_list", "comma-separated element counts for sweep-h"},
      {"delta_list", "comma-separated time steps for sweep-dt"},
  };
  for (const auto& [key, help] : keys) {
    std::string flag = "--" + std::string(key);
    for (auto& ch : flag)
      if (ch == '_') ch = '-';
    cmd->add_option_function<std::string>(
        flag, [&flags, k = std::string(key)](const std::string& v) { flags.overrides.emplace_back(k, v); },
        help);
  }
}

RunConfig resolve_config(const ConfigFlags& flags) {
  // The case picks the preset, so find it first: flags beat the file.
  RunConfig probe;
  if (!flags.config_path.empty()) probe = load_config_file(flags.config_path, probe);
  for (const auto& [key, value] : flags.overrides)
    if (key == "case") apply_setting(probe, key, value);

  RunConfig config = preset_config(probe.case_id);
  if (!flags.config_path.empty()) config = load_config_file(flags.config_path, config);
  for (const auto& [key, value] : flags.overrides) apply_setting(config, key, value);
  config.validate();
  return config;
}

void print_emitted(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
}

std::string rate_text(const std::optional<double>& rate) {
  return rate ? format_double(*rate) : std::string("-");
}

int cmd_solve(const ConfigFlags& flags) {
  const RunConfig config = resolve_config(flags);
  const RunReport report = run_solve(config);
  std::printf("case %s k=%d n=%d h=%.6g delta=%.6g t_end=%.6g nodes=%zu\n",
              std::string(to_string(config.case_id)).c_str(), config.k, config.n, report.h, config.delta,
              report.t_end, report.n_nodes);
  std::printf("L2 error at t_end: %s\n", format_double(report.final_error).c_str());
  std::printf("final energy: %s\n", format_double(report.trajectory.records.back().energy).c_str());
  if (report.trajectory.first_guard_trip)
    std::printf("first guard trip at t=%s\n", format_double(*report.trajectory.first_guard_trip).c_str());
  if (report.trajectory.extinct) std::printf("field extinct (frozen at zero)\n");
  print_emitted(emit_run(report, config.out_dir));
  return 0;
}

int print_sweep(const SweepResult& sweep, const RunConfig& config) {
  std::printf("%-24s %-24s %-24s %s\n", sweep.kind == SweepKind::Space ? "h" : "delta", "error_l2", "rate", "");
  for (const auto& r : sweep.rows)
    std::printf("%-24s %-24s %-24s %s\n", format_double(sweep.kind == SweepKind::Space ? r.h : r.delta).c_str(),
                format_double(r.error_l2).c_str(), rate_text(r.pairwise_rate).c_str(), r.failure.c_str());
  std::printf("fitted slope: %s\n", rate_text(sweep.fitted_slope).c_str());
  print_emitted(emit_sweep(sweep, config, config.out_dir));
  for (const auto& r : sweep.rows)
    if (!r.failure.empty()) return 3;
  return 0;
}

int cmd_sweep_h(const ConfigFlags& flags) {
  const RunConfig config = resolve_config(flags);
  return print_sweep(sweep_h(config, config.resolved_n_list()), config);
}

int cmd_sweep_dt(const ConfigFlags& flags) {
  const RunConfig config = resolve_config(flags);
  return print_sweep(sweep_delta(config, config.delta_list), config);
}

int cmd_alpha(const std::string& case_name) {
  const CaseId id = case_id_from_string(case_name);
  const auto result = solve_alpha(alpha_map(id), default_alpha_config(id));
  std::printf("case %s\n", case_name.c_str());
  std::printf("alpha = %.17g\n", result.alpha);
  std::printf("residual = %.3e\n", result.residual);
  std::printf("iterations = %d\n", result.iterations);
  return 0;
}

int cmd_verify(const std::string& case_name) {
  const ManufacturedCase c = make_case(case_id_from_string(case_name));
  const ResidualReport r = verify_case(c);
  std::printf("case %s (dim %d, gamma %g)\n", case_name.c_str(), c.dim, c.gamma);
  std::printf("alpha                  %.17g\n", c.alpha);
  std::printf("max pde residual       %.3e\n", r.max_pde_residual);
  std::printf("fixed-point residual   %.3e\n", r.fixed_point_residual);
  std::printf("boundary trace         %.3e\n", r.max_boundary_trace);
  std::printf("closed-form boundary   %.3e\n", r.max_closed_form_boundary);
  std::printf("coefficient mismatch   %.3e\n", r.max_coefficient_mismatch);
  std::printf("samples                %zu\n", r.samples);
  if (!c.notes.empty()) std::printf("notes: %s\n", c.notes.c_str());
  return 0;
}

int cmd_energy(const std::string& out_dir) {
  std::vector<RunConfig> configs;
  for (CaseId id : {CaseId::Example1, CaseId::Example2, CaseId::Example3}) configs.push_back(preset_config(id));
  const EnergyTable table = energy_study(configs);
  // One line per case: log energy at the first and last grid time.
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    const bool last = i + 1 == table.rows.size() || table.rows[i + 1].case_id != r.case_id;
    if (i == 0 || table.rows[i - 1].case_id != r.case_id)
      std::printf("%s: log energy %s at t=%g", std::string(to_string(r.case_id)).c_str(),
                  format_double(r.log_energy).c_str(), r.t);
    if (last) std::printf(" -> %s at t=%g\n", format_double(r.log_energy).c_str(), r.t);
  }
  print_emitted(emit_energy(table, configs, out_dir));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crank-Nicolson Galerkin solver for nonlocal diffusion with manufactured solutions"};
  app.require_subcommand(1);

  ConfigFlags solve_flags, sweep_h_flags, sweep_dt_flags;
  auto* solve = app.add_subcommand("solve", "run one solve and write the history and snapshots");
  add_config_flags(solve, solve_flags);
  auto* sweep_h_cmd = app.add_subcommand("sweep-h", "spatial convergence study");
  add_config_flags(sweep_h_cmd, sweep_h_flags);
  auto* sweep_dt_cmd = app.add_subcommand("sweep-dt", "temporal convergence study");
  add_config_flags(sweep_dt_cmd, sweep_dt_flags);

  std::string alpha_case, verify_case_name, energy_out = "out";
  auto* alpha = app.add_subcommand("alpha", "solve the fixed point for a case's alpha");
  alpha->add_option("case", alpha_case, "example1 | example2 | example3")->required();
  auto* verify = app.add_subcommand("verify", "check a manufactured solution against the PDE");
  verify->add_option("case", verify_case_name, "example1 | example2 | example3")->required();
  auto* energy = app.add_subcommand("energy", "log-energy time series of all three cases");
  energy->add_option("--out-dir", energy_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(solve_flags);
    if (*sweep_h_cmd) return cmd_sweep_h(sweep_h_flags);
    if (*sweep_dt_cmd) return cmd_sweep_dt(sweep_dt_flags);
    if (*alpha) return cmd_alpha(alpha_case);
    if (*verify) return cmd_verify(verify_case_name);
    if (*energy) return cmd_energy(energy_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
