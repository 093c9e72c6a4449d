#include "nlcn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlcn/assembly.hpp"
#include "nlcn/error.hpp"

namespace nlcn {

SpacePtr build_space(const RunConfig& config) {
  const SimplicialMesh mesh =
      config.resolved_dim() == 1 ? uniform_interval_mesh(0.0, 1.0, config.n) : uniform_square_mesh(config.n);
  return build_lagrange_space(mesh, config.k);
}

RunReport run_solve(const RunConfig& config, const ManufacturedCase* precomputed) {
  config.validate();
  std::optional<ManufacturedCase> owned;
  if (!precomputed || precomputed->id != config.case_id) owned = make_case(config.case_id);
  const ManufacturedCase& mc = owned ? *owned : *precomputed;

  RunReport report;
  report.config = config;
  report.space = build_space(config);
  report.h = report.space->h();
  report.n_nodes = report.space->n_nodes();
  report.t_end = config.resolved_t_end();

  Problem problem;
  problem.coefficient = {mc.gamma, config.guard_floor, config.guard_ceiling, false};
  problem.u0 = mc.u0;
  problem.forcing = mc.f;

  RunOptions options;
  options.solver = {config.solver_tol, 0, config.solver_method};
  options.policy = config.guard_policy;
  options.snapshot_times = config.snapshots;

  const TimeGrid grid = TimeGrid::from_step(report.t_end, config.delta);
  report.trajectory = run(report.space, problem, grid, options);
  report.final_error = l2_error(report.trajectory.final_field, mc.u, report.t_end);
  return report;
}

void compute_rates(SweepResult& sweep) {
  const auto usable = [](const SweepRow& r) {
    return r.failure.empty() && std::isfinite(r.error_l2) && r.error_l2 > 0.0;
  };
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    auto& row = sweep.rows[i];
    row.pairwise_rate.reset();
    if (i == 0) continue;
    const auto& prev = sweep.rows[i - 1];
    if (usable(prev) && usable(row)) row.pairwise_rate = std::log2(prev.error_l2 / row.error_l2);
  }

  std::vector<double> xs, ys;
  for (const auto& row : sweep.rows) {
    if (!usable(row)) continue;
    xs.push_back(std::log(sweep.kind == SweepKind::Space ? row.h : row.delta));
    ys.push_back(std::log(row.error_l2));
  }
  sweep.fitted_slope.reset();
  if (xs.size() < 2) return;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx > 0.0) sweep.fitted_slope = sxy / sxx;
}

namespace {

SweepRow run_row(const RunConfig& cfg, const ManufacturedCase& mc) {
  SweepRow row;
  row.k = cfg.k;
  row.delta = cfg.delta;
  row.t_end = cfg.resolved_t_end();
  try {
    const RunReport report = run_solve(cfg, &mc);
    row.h = report.h;
    row.error_l2 = report.final_error;
  } catch (const Error& e) {
    row.h = build_space(cfg)->h();
    row.error_l2 = std::numeric_limits<double>::quiet_NaN();
    row.failure = e.what();
  }
  return row;
}

}  // namespace

SweepResult sweep_h(const RunConfig& base, std::vector<int> n_list) {
  base.validate();
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  const ManufacturedCase mc = make_case(base.case_id);
  SweepResult out;
  out.case_id = base.case_id;
  out.kind = SweepKind::Space;
  for (int n : n_list) {
    RunConfig cfg = base;
    cfg.n = n;
    cfg.snapshots.clear();
    out.rows.push_back(run_row(cfg, mc));
  }
  compute_rates(out);
  return out;
}

SweepResult sweep_delta(const RunConfig& base, std::vector<double> delta_list) {
  base.validate();
  std::sort(delta_list.begin(), delta_list.end(), std::greater<>());
  delta_list.erase(std::unique(delta_list.begin(), delta_list.end()), delta_list.end());
  const ManufacturedCase mc = make_case(base.case_id);
  SweepResult out;
  out.case_id = base.case_id;
  out.kind = SweepKind::Time;
  for (double d : delta_list) {
    RunConfig cfg = base;
    cfg.delta = d;
    cfg.snapshots.clear();
    out.rows.push_back(run_row(cfg, mc));
  }
  compute_rates(out);
  return out;
}

EnergyTable energy_study(const std::vector<RunConfig>& configs) {
  EnergyTable table;
  for (const auto& cfg : configs) {
    const RunReport report = run_solve(cfg);
    for (const auto& rec : report.trajectory.records) {
      EnergyRow row;
      row.case_id = cfg.case_id;
      row.t = rec.t;
      row.energy = rec.energy;
      row.log_energy = rec.energy > 0.0 ? std::log(rec.energy) : -std::numeric_limits<double>::infinity();
      table.rows.push_back(row);
    }
  }
  return table;
}

}  // namespace nlcn
