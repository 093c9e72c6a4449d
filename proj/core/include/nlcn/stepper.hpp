#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "nlcn/assembly.hpp"
#include "nlcn/linalg.hpp"
#include "nlcn/nonlocal.hpp"

namespace nlcn {

/// Uniform partition of [0, t_end] into n_steps intervals.
class TimeGrid {
 public:
  TimeGrid(double t_end, int n_steps);

  /// Grid with step delta; t_end must be an integer multiple of delta
  /// (relative mismatch below 1e-9).
  static TimeGrid from_step(double t_end, double delta);

  [[nodiscard]] double t_end() const { return t_end_; }
  [[nodiscard]] int n_steps() const { return n_steps_; }
  [[nodiscard]] double delta() const { return t_end_ / n_steps_; }
  [[nodiscard]] double time(int n) const { return n == n_steps_ ? t_end_ : n * delta(); }

  /// Index of the grid time closest to t (ties go to the earlier index).
  [[nodiscard]] int nearest_index(double t) const;

 private:
  double t_end_;
  int n_steps_;
};

enum class GuardPolicy { Warn, Abort };

std::string_view to_string(GuardPolicy policy);
GuardPolicy guard_policy_from_string(std::string_view name);

struct CoefficientRecord {
  int step = 0;
  double t = 0.0;
  double value = 0.0;
  GuardStatus status = GuardStatus::Ok;
};

struct EnergyRecord {
  int step = 0;
  double t = 0.0;
  double energy = 0.0;
};

/// Mass and stiffness matrices cached for the whole run; the step matrices
/// M/delta +- a K/2 are formed from them by scalar combination.
struct StepOperators {
  SparseSymMatrix mass;
  SparseSymMatrix stiffness;

  static StepOperators assemble(const LagrangeSpace& space);
};

struct StepSettings {
  double delta = 0.0;
  SolverConfig solver{};
  GuardPolicy policy = GuardPolicy::Warn;
};

struct StepState {
  FieldVector U_prev;                   ///< U_{n-1} (after a step: the newest level)
  std::optional<FieldVector> U_prev2;   ///< U_{n-2}
  std::optional<FieldVector> predictor; ///< U_{1,0}, kept after the first step
  double t = 0.0;
  int step_index = 0;
  bool extinct = false;  ///< field frozen at zero after a degenerate step
  std::vector<CoefficientRecord> coefficient_history;
  std::vector<EnergyRecord> energy_history;
};

/// U_0 = I_h u0 at t = 0.
StepState init(const SpacePtr& space, const SpatialField& u0, const SparseSymMatrix& mass);

/// Predictor-corrector pair producing U_1:
///   (M/d + a(U_0) K/2) U_{1,0} = (M/d - a(U_0) K/2) U_0 + F_{1/2}
///   (M/d + a*     K/2) U_1     = (M/d - a*     K/2) U_0 + F_{1/2},  a* = a((U_{1,0} + U_0)/2).
StepState first_step(StepState state, const StepOperators& ops, const NonlocalCoefficient& coeff,
                     const SpaceTimeField& f, const StepSettings& settings);

/// Linearized Crank-Nicolson step n >= 2 with the coefficient evaluated at
/// the extrapolation (3/2) U_{n-1} - (1/2) U_{n-2}.
StepState step(StepState state, const StepOperators& ops, const NonlocalCoefficient& coeff,
               const SpaceTimeField& f, const StepSettings& settings);

struct Problem {
  NonlocalCoefficient coefficient;
  SpatialField u0;
  SpaceTimeField forcing;  ///< empty means f = 0
};

struct RunOptions {
  SolverConfig solver{};
  GuardPolicy policy = GuardPolicy::Warn;
  std::vector<double> snapshot_times;
};

struct StepRecord {
  int step = 0;
  double t = 0.0;
  double energy = 0.0;
  double coefficient = 0.0;
  GuardStatus status = GuardStatus::Ok;
};

struct Snapshot {
  double requested_time = 0.0;
  int step = 0;
  double t = 0.0;
  FieldVector field;
};

struct Trajectory {
  FieldVector final_field;
  std::vector<StepRecord> records;  ///< step 0 (initial data) through n_steps
  std::vector<CoefficientRecord> coefficient_history;
  std::vector<Snapshot> snapshots;
  std::optional<double> first_guard_trip;
  bool extinct = false;
};

using StepObserver = std::function<void(const StepRecord&, const FieldVector&)>;

/// init, first_step, then n_steps - 1 multistep steps. Errors are rethrown
/// with the failing step index and time.
Trajectory run(const SpacePtr& space, const Problem& problem, const TimeGrid& grid,
               const RunOptions& options = {}, const std::vector<StepObserver>& observers = {});

}  // namespace nlcn
