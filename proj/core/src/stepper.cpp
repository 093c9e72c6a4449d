#include "nlcn/stepper.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nlcn/error.hpp"

namespace nlcn {

TimeGrid::TimeGrid(double t_end, int n_steps) : t_end_(t_end), n_steps_(n_steps) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorKind::InvalidConfig, "t_end must be positive");
  if (n_steps < 1) throw Error(ErrorKind::InvalidCount, "time grid needs at least one step");
}

TimeGrid TimeGrid::from_step(double t_end, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorKind::InvalidConfig, "delta must be positive");
  const double ratio = t_end / delta;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * n)
    throw Error(ErrorKind::InvalidConfig,
                "t_end=" + std::to_string(t_end) + " is not a multiple of delta=" + std::to_string(delta));
  return TimeGrid(t_end, static_cast<int>(n));
}

int TimeGrid::nearest_index(double t) const {
  const double r = t / delta();
  if (r <= 0.0) return 0;
  if (r >= n_steps_) return n_steps_;
  const int lo = static_cast<int>(std::floor(r));
  return (r - lo) > 0.5 ? lo + 1 : lo;
}

std::string_view to_string(GuardPolicy policy) { return policy == GuardPolicy::Warn ? "warn" : "abort"; }

GuardPolicy guard_policy_from_string(std::string_view name) {
  if (name == "warn") return GuardPolicy::Warn;
  if (name == "abort") return GuardPolicy::Abort;
  throw Error(ErrorKind::InvalidConfig, "guard policy must be 'warn' or 'abort', got '" + std::string(name) + "'");
}

StepOperators StepOperators::assemble(const LagrangeSpace& space) {
  return {assemble_mass(space), assemble_stiffness(space)};
}

namespace {

struct ResolvedCoefficient {
  double value = 0.0;
  GuardStatus status = GuardStatus::Ok;
  bool extinguish = false;
};

std::string where(int step, double t) {
  return "step " + std::to_string(step) + ", t=" + std::to_string(t);
}

// Coefficient at a given field plus the guard decision. With gamma < 0 both
// s = 0 and a trip above the ceiling mean the norm has collapsed: under the
// warn policy the field is then frozen at zero.
ResolvedCoefficient resolve(const NonlocalCoefficient& coeff, const FieldVector& field, const SparseSymMatrix& mass,
                            GuardPolicy policy, int step, double t) {
  const double s = l2_norm_sq(field, mass);
  ResolvedCoefficient out;
  const bool degenerate = s == 0.0 && (coeff.gamma < 0.0 || (coeff.gamma > 0.0 && coeff.strict_positivity));
  if (degenerate) {
    if (policy == GuardPolicy::Abort)
      throw Error(ErrorKind::DegenerateCoefficient, "||U|| = 0 at " + where(step, t));
    out.value = coeff.gamma < 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    out.status = GuardStatus::Degenerate;
    out.extinguish = coeff.gamma < 0.0;
    return out;
  }
  out.value = coeff.from_energy(s);
  out.status = check_guards(out.value, coeff);
  if (out.status != GuardStatus::Ok && policy == GuardPolicy::Abort)
    throw Error(ErrorKind::DegenerateCoefficient, "a=" + std::to_string(out.value) + " is " +
                                                      std::string(to_string(out.status)) + " at " + where(step, t));
  out.extinguish = out.status == GuardStatus::AboveCeiling && coeff.gamma < 0.0;
  return out;
}

// (M/d + a K/2) X = (M/d - a K/2) U + F
FieldVector crank_nicolson_solve(const StepOperators& ops, double a, const FieldVector& U, const FieldVector& F,
                                 const StepSettings& settings) {
  const double inv_delta = 1.0 / settings.delta;
  const SparseSymMatrix lhs = SparseSymMatrix::combine(inv_delta, ops.mass, 0.5 * a, ops.stiffness);
  const std::vector<double> mu = ops.mass.multiply(U.values);
  const std::vector<double> ku = ops.stiffness.multiply(U.values);
  FieldVector rhs(U.space, std::vector<double>(U.size()));
  for (std::size_t i = 0; i < U.size(); ++i) rhs.values[i] = inv_delta * mu[i] - 0.5 * a * ku[i] + F.values[i];
  rhs.zero_boundary();
  return solve_spd(lhs, rhs, settings.solver);
}

GuardStatus worse(GuardStatus a, GuardStatus b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

void finish_step(StepState& state, FieldVector next, double a, GuardStatus status, double t_next,
                 const SparseSymMatrix& mass) {
  state.U_prev2 = std::move(state.U_prev);
  state.U_prev = std::move(next);
  state.t = t_next;
  state.step_index += 1;
  state.coefficient_history.push_back({state.step_index, t_next, a, status});
  state.energy_history.push_back({state.step_index, t_next, l2_norm_sq(state.U_prev, mass)});
}

void check_settings(const StepSettings& settings) {
  if (!(settings.delta > 0.0)) throw Error(ErrorKind::InvalidConfig, "time step must be positive");
}

}  // namespace

StepState init(const SpacePtr& space, const SpatialField& u0, const SparseSymMatrix& mass) {
  StepState state;
  state.U_prev = u0 ? interpolate(space, u0) : FieldVector(space);
  state.t = 0.0;
  state.step_index = 0;
  state.energy_history.push_back({0, 0.0, l2_norm_sq(state.U_prev, mass)});
  return state;
}

StepState first_step(StepState state, const StepOperators& ops, const NonlocalCoefficient& coeff,
                     const SpaceTimeField& f, const StepSettings& settings) {
  check_settings(settings);
  if (state.step_index != 0)
    throw Error(ErrorKind::InvalidConfig, "first_step called at step " + std::to_string(state.step_index));
  const double t_next = state.t + settings.delta;
  const FieldVector& U0 = state.U_prev;
  const FieldVector zero(U0.space);

  if (state.extinct) {
    finish_step(state, zero, std::numeric_limits<double>::infinity(), GuardStatus::Degenerate, t_next, ops.mass);
    return state;
  }

  const auto predictor_coeff = resolve(coeff, U0, ops.mass, settings.policy, 1, state.t);
  if (predictor_coeff.extinguish) {
    state.extinct = true;
    finish_step(state, zero, predictor_coeff.value, predictor_coeff.status, t_next, ops.mass);
    return state;
  }

  const FieldVector F = assemble_load(U0.space, f, 0.5 * (state.t + t_next));
  FieldVector predictor = crank_nicolson_solve(ops, predictor_coeff.value, U0, F, settings);

  const FieldVector midpoint = linear_combination(0.5, predictor, 0.5, U0);
  const auto corrector_coeff = resolve(coeff, midpoint, ops.mass, settings.policy, 1, state.t);
  const GuardStatus status = worse(predictor_coeff.status, corrector_coeff.status);
  if (corrector_coeff.extinguish) {
    state.extinct = true;
    state.predictor = std::move(predictor);
    finish_step(state, zero, corrector_coeff.value, status, t_next, ops.mass);
    return state;
  }

  FieldVector U1 = crank_nicolson_solve(ops, corrector_coeff.value, U0, F, settings);
  state.predictor = std::move(predictor);
  finish_step(state, std::move(U1), corrector_coeff.value, status, t_next, ops.mass);
  return state;
}

StepState step(StepState state, const StepOperators& ops, const NonlocalCoefficient& coeff,
               const SpaceTimeField& f, const StepSettings& settings) {
  check_settings(settings);
  if (state.step_index < 1 || !state.U_prev2)
    throw Error(ErrorKind::InvalidConfig, "multistep formula needs two previous levels");
  const double t_next = state.t + settings.delta;
  const FieldVector zero(state.U_prev.space);
  const int n = state.step_index + 1;

  if (state.extinct) {
    finish_step(state, zero, std::numeric_limits<double>::infinity(), GuardStatus::Degenerate, t_next, ops.mass);
    return state;
  }

  const FieldVector extrapolated = linear_combination(1.5, state.U_prev, -0.5, *state.U_prev2);
  const auto a = resolve(coeff, extrapolated, ops.mass, settings.policy, n, state.t);
  if (a.extinguish) {
    state.extinct = true;
    finish_step(state, zero, a.value, a.status, t_next, ops.mass);
    return state;
  }

  const FieldVector F = assemble_load(state.U_prev.space, f, 0.5 * (state.t + t_next));
  FieldVector next = crank_nicolson_solve(ops, a.value, state.U_prev, F, settings);
  finish_step(state, std::move(next), a.value, a.status, t_next, ops.mass);
  return state;
}

Trajectory run(const SpacePtr& space, const Problem& problem, const TimeGrid& grid, const RunOptions& options,
               const std::vector<StepObserver>& observers) {
  problem.coefficient.validate();
  options.solver.validate();
  const StepOperators ops = StepOperators::assemble(*space);
  const StepSettings settings{grid.delta(), options.solver, options.policy};

  std::vector<int> snapshot_steps;
  for (double ts : options.snapshot_times) snapshot_steps.push_back(grid.nearest_index(ts));

  Trajectory out;
  const auto emit = [&](const StepState& state) {
    StepRecord rec;
    rec.step = state.step_index;
    // Grid times are taken from the grid, not accumulated.
    rec.t = grid.time(state.step_index);
    rec.energy = state.energy_history.back().energy;
    if (state.coefficient_history.empty()) {
      const double s = rec.energy;
      const auto& c = problem.coefficient;
      if (s == 0.0 && c.gamma < 0.0) {
        rec.coefficient = std::numeric_limits<double>::infinity();
        rec.status = GuardStatus::Degenerate;
      } else {
        rec.coefficient = (s == 0.0 && c.gamma > 0.0) ? 0.0 : c.from_energy(s);
        rec.status = check_guards(rec.coefficient, c);
      }
    } else {
      rec.coefficient = state.coefficient_history.back().value;
      rec.status = state.coefficient_history.back().status;
      if (rec.status != GuardStatus::Ok && !out.first_guard_trip) out.first_guard_trip = rec.t;
    }
    out.records.push_back(rec);
    for (std::size_t i = 0; i < snapshot_steps.size(); ++i)
      if (snapshot_steps[i] == state.step_index)
        out.snapshots.push_back({options.snapshot_times[i], state.step_index, rec.t, state.U_prev});
    for (const auto& observer : observers) observer(rec, state.U_prev);
  };

  StepState state;
  int current = 0;
  try {
    state = init(space, problem.u0, ops.mass);
    emit(state);
    current = 1;
    state = first_step(std::move(state), ops, problem.coefficient, problem.forcing, settings);
    state.t = grid.time(1);
    emit(state);
    for (int n = 2; n <= grid.n_steps(); ++n) {
      current = n;
      state = step(std::move(state), ops, problem.coefficient, problem.forcing, settings);
      state.t = grid.time(n);
      emit(state);
    }
  } catch (const Error& e) {
    throw Error(e.kind(), "at step " + std::to_string(current) + " (t=" + std::to_string(grid.time(current)) +
                              "): " + e.what());
  }

  out.final_field = state.U_prev;
  out.coefficient_history = std::move(state.coefficient_history);
  out.extinct = state.extinct;
  return out;
}

}  // namespace nlcn
