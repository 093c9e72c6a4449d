#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nlcn/error.hpp"
#include "nlcn/manufactured.hpp"
#include "nlcn/stepper.hpp"
#include "oracles.hpp"

using namespace nlcn;
using std::numbers::pi;

namespace {

const SpaceTimeField no_forcing = [](const Point&, double) { return 0.0; };
const SpatialField sine = [](const Point& p) { return std::sin(pi * p[0]); };

SpacePtr interval_space(int n, int k) { return build_lagrange_space(uniform_interval_mesh(0.0, 1.0, n), k); }

StepSettings settings_for(double delta) {
  StepSettings s;
  s.delta = delta;
  return s;
}

double max_diff(const FieldVector& a, const FieldVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(TimeGrid, UniformSteps) {
  const TimeGrid g(2.0, 8);
  EXPECT_DOUBLE_EQ(g.delta(), 0.25);
  EXPECT_EQ(g.time(8), 2.0);
  EXPECT_EQ(g.nearest_index(0.6), 2);
  EXPECT_EQ(TimeGrid::from_step(10.0, 1e-3).n_steps(), 10000);
  EXPECT_THROW(TimeGrid::from_step(1.0, 0.3), Error);
  EXPECT_THROW(TimeGrid(1.0, 0), Error);
}

TEST(Init, ZeroData) {
  const auto s = interval_space(4, 2);
  const auto ops = StepOperators::assemble(*s);
  const auto st = init(s, [](const Point&) { return 0.0; }, ops.mass);
  EXPECT_TRUE(st.U_prev.is_zero());
  EXPECT_EQ(st.t, 0.0);
  EXPECT_EQ(st.step_index, 0);
}

TEST(Init, ExampleOneDataIsPositive) {
  const auto c = make_case(CaseId::Example1);
  const auto s = interval_space(50, 2);
  const auto ops = StepOperators::assemble(*s);
  const auto st = init(s, c.u0, ops.mass);
  EXPECT_GT(l2_norm_sq(st.U_prev, ops.mass), 0.0);
  EXPECT_GT(integral(st.U_prev, ops.mass), 0.0);
}

TEST(Init, SineNodalValues) {
  const auto s = interval_space(4, 1);
  const auto st = init(s, sine, StepOperators::assemble(*s).mass);
  EXPECT_NEAR(st.U_prev[1], std::sqrt(2.0) / 2, 1e-15);
  EXPECT_NEAR(st.U_prev[2], 1.0, 1e-15);
  EXPECT_NEAR(st.U_prev[3], std::sqrt(2.0) / 2, 1e-15);
}

TEST(FirstStep, ConstantCoefficientIsOneClassicalStep) {
  const double delta = 1e-3;
  const auto s = interval_space(32, 2);
  const auto ops = StepOperators::assemble(*s);
  auto st = first_step(init(s, sine, ops.mass), ops, NonlocalCoefficient{0.0}, no_forcing, settings_for(delta));
  ASSERT_TRUE(st.predictor.has_value());
  EXPECT_LE(max_diff(*st.predictor, st.U_prev), 1e-13);
  const double ratio = std::sqrt(l2_norm_sq(st.U_prev, ops.mass) / l2_norm_sq(*st.U_prev2, ops.mass));
  EXPECT_NEAR(ratio, std::exp(-pi * pi * delta), 1e-6);
}

TEST(FirstStep, ZeroDataStaysZero) {
  const auto s = interval_space(8, 1);
  const auto ops = StepOperators::assemble(*s);
  const auto st = first_step(init(s, [](const Point&) { return 0.0; }, ops.mass), ops, NonlocalCoefficient{0.5},
                             no_forcing, settings_for(0.1));
  EXPECT_TRUE(st.U_prev.is_zero());
}

TEST(FirstStep, ExampleOneIsAccurate) {
  const auto c = make_case(CaseId::Example1);
  const double delta = 1e-3;
  const auto s = interval_space(100, 2);
  const auto ops = StepOperators::assemble(*s);
  const auto st = first_step(init(s, c.u0, ops.mass), ops, NonlocalCoefficient{c.gamma}, c.f, settings_for(delta));
  // O(h^3 + delta^2): the step adds at most the interpolation error of u(., delta).
  const double interp = l2_error(interpolate(s, [&](const Point& p) { return c.u(p, delta); }), c.u, delta);
  EXPECT_LE(l2_error(st.U_prev, c.u, delta), 2 * interp + delta * delta);
}

TEST(FirstStep, RejectsUsedState) {
  const auto s = interval_space(8, 1);
  const auto ops = StepOperators::assemble(*s);
  auto st = first_step(init(s, sine, ops.mass), ops, NonlocalCoefficient{0.0}, no_forcing, settings_for(0.1));
  EXPECT_THROW(first_step(st, ops, NonlocalCoefficient{0.0}, no_forcing, settings_for(0.1)), Error);
}

TEST(Step, ZeroHistoryStaysZero) {
  const auto s = interval_space(8, 2);
  const auto ops = StepOperators::assemble(*s);
  auto st = first_step(init(s, [](const Point&) { return 0.0; }, ops.mass), ops, NonlocalCoefficient{1.0},
                       no_forcing, settings_for(0.1));
  st = step(std::move(st), ops, NonlocalCoefficient{1.0}, no_forcing, settings_for(0.1));
  EXPECT_TRUE(st.U_prev.is_zero());
  EXPECT_EQ(st.step_index, 2);
}

TEST(Step, RequiresTwoLevels) {
  const auto s = interval_space(8, 1);
  const auto ops = StepOperators::assemble(*s);
  EXPECT_THROW(step(init(s, sine, ops.mass), ops, NonlocalCoefficient{0.0}, no_forcing, settings_for(0.1)), Error);
}

TEST(Run, ConstantCoefficientMatchesDenseCrankNicolson) {
  const double delta = 0.01;
  const int n_steps = 50;
  const auto s = interval_space(12, 2);
  const auto ops = StepOperators::assemble(*s);
  const auto U0 = interpolate(s, sine);
  const auto levels = oracle::heat_cn(ops.mass, ops.stiffness, U0, delta, n_steps);

  std::vector<std::vector<double>> got;
  StepObserver record = [&](const StepRecord&, const FieldVector& U) { got.push_back(U.values); };
  run(s, Problem{NonlocalCoefficient{0.0}, sine, {}}, TimeGrid(delta * n_steps, n_steps), {}, {record});
  ASSERT_EQ(got.size(), levels.size());
  for (std::size_t n = 0; n < got.size(); ++n)
    for (std::size_t i = 0; i < got[n].size(); ++i) EXPECT_NEAR(got[n][i], levels[n][i], 10 * 1e-12) << n;
}

TEST(Run, SingleStepIsOnePredictorCorrectorPair) {
  const auto s = interval_space(8, 1);
  const auto tr = run(s, Problem{NonlocalCoefficient{0.5}, sine, {}}, TimeGrid(0.1, 1));
  EXPECT_EQ(tr.records.size(), 2u);
  EXPECT_EQ(tr.coefficient_history.size(), 1u);
  EXPECT_EQ(tr.records.back().step, 1);
}

TEST(Run, ExampleOneDecaysLikeInverseTime) {
  const auto c = make_case(CaseId::Example1);
  const auto s = interval_space(100, 2);
  const auto tr = run(s, Problem{NonlocalCoefficient{c.gamma}, c.u0, c.f}, TimeGrid::from_step(10.0, 1e-3));
  EXPECT_LE(l2_error(tr.final_field, c.u, 10.0), 1e-7);
  const double e0 = tr.records.front().energy;
  for (const auto& r : tr.records)
    EXPECT_NEAR(r.energy * (r.t + 1) * (r.t + 1), e0, 1e-6 * e0) << "t=" << r.t;
  EXPECT_FALSE(tr.first_guard_trip.has_value());
}

TEST(Run, ExampleTwoExtinguishesAtOne) {
  const auto c = make_case(CaseId::Example2);
  const auto s = interval_space(100, 2);
  NonlocalCoefficient coeff{c.gamma};
  coeff.ceil_M = 1e3;
  const auto tr = run(s, Problem{coeff, c.u0, c.f}, TimeGrid::from_step(2.0, 1e-3));
  for (const auto& r : tr.records)
    if (r.t >= 1.0 + 1e-12) EXPECT_LE(r.energy, 1e-6) << "t=" << r.t;
  ASSERT_TRUE(tr.first_guard_trip.has_value());
  EXPECT_NEAR(*tr.first_guard_trip, 1.0, 0.05);
  EXPECT_TRUE(tr.extinct);
  EXPECT_TRUE(tr.final_field.is_zero());
}

TEST(Run, AbortPolicyReportsStepAndTime) {
  const auto c = make_case(CaseId::Example2);
  const auto s = interval_space(20, 1);
  NonlocalCoefficient coeff{c.gamma};
  coeff.ceil_M = 10.0;
  RunOptions opts;
  opts.policy = GuardPolicy::Abort;
  try {
    run(s, Problem{coeff, c.u0, c.f}, TimeGrid::from_step(2.0, 1e-2), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateCoefficient);
    EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
  }
}

TEST(Run, EveryStepLoggedOnce) {
  const auto c = make_case(CaseId::Example1);
  const auto tr = run(interval_space(10, 1), Problem{NonlocalCoefficient{c.gamma}, c.u0, c.f}, TimeGrid(1.0, 40));
  ASSERT_EQ(tr.coefficient_history.size(), 40u);
  for (int n = 0; n < 40; ++n) EXPECT_EQ(tr.coefficient_history[n].step, n + 1);
}

TEST(Run, SnapshotsUseNearestGridTime) {
  RunOptions opts;
  opts.snapshot_times = {0.0, 0.33, 1.0};
  const auto tr = run(interval_space(8, 1), Problem{NonlocalCoefficient{0.0}, sine, {}}, TimeGrid(1.0, 10), opts);
  ASSERT_EQ(tr.snapshots.size(), 3u);
  EXPECT_EQ(tr.snapshots[1].step, 3);
  EXPECT_NEAR(tr.snapshots[1].t, 0.3, 1e-15);
  EXPECT_EQ(tr.snapshots[2].step, 10);
}
