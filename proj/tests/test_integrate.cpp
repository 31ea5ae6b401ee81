#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "emberflow/fit.hpp"
#include "emberflow/integrate.hpp"
#include "emberflow/norms.hpp"
#include "emberflow/scenarios.hpp"
#include "oracles.hpp"

using namespace emberflow;

namespace {

SystemState uniform_state(const GridSpec& g, double t0, double y0) {
  return {ScalarField::constant(g, t0), ScalarField::constant(g, y0), 0.0};
}

SystemState gaussian_state(const GridSpec& g, double amplitude, double sigma, double fuel) {
  ScenarioParams p;
  p.amplitude = amplitude;
  p.sigma = sigma;
  return {initial_data(g, Scenario::gaussian, p), ScalarField::constant(g, fuel), 0.0};
}

SystemState final_state(const SystemState& s, const ModelParams& m, SchemeKind kind, double dt,
                        double horizon) {
  RunOptions opt;
  opt.horizon = horizon;
  opt.record_every = 1000000;
  return run_simulation(s, m, {kind, dt}, opt).final_state;
}

// Fitted order of the final-time error against the RK4 oracle for constant data.
double observed_order(SchemeKind kind) {
  const auto g = GridSpec::make(1, 8, 1.0);
  const ModelParams m{0.1, 0.3};
  const double horizon = 5.0;
  const auto ref = oracle::rk4({1.0, 1.0}, m.lambda, m.beta, horizon, 200000);
  std::vector<double> log_dt, log_err;
  for (int k = 0; k < 5; ++k) {
    const double dt = 0.05 / std::pow(2.0, k);
    const auto s = final_state(uniform_state(g, 1.0, 1.0), m, kind, dt, horizon);
    const double err =
        std::max(std::abs(s.temperature[0] - ref.temperature), std::abs(s.fuel[0] - ref.fuel));
    log_dt.push_back(std::log(dt));
    log_err.push_back(std::log(err));
  }
  return fit_line(log_dt, log_err).slope;
}

}  // namespace

TEST(Scheme, Names) {
  EXPECT_EQ(parse_scheme("etd1"), SchemeKind::etd1);
  EXPECT_EQ(scheme_name(SchemeKind::etd2), "etd2");
  EXPECT_THROW(parse_scheme("rk4"), InvalidInput);
}

TEST(StepCount, WholeMultiplesOnly) {
  EXPECT_EQ(step_count(1.0, 0.1), 10u);
  EXPECT_EQ(step_count(5.0, 0.05 / 16), 1600u);
  EXPECT_THROW(step_count(1.0, 0.3), InvalidInput);
  EXPECT_THROW(step_count(-1.0, 0.1), InvalidInput);
}

TEST(Step, WithoutFuelIsDampedHeatFlow) {
  const auto g = GridSpec::make(1, 512, 50.0);
  for (double lambda : {0.0, 1.0}) {
    auto s = gaussian_state(g, 2.0, 1.5, 0.0);
    const auto t0 = s.temperature;
    const ModelParams m{lambda, 0.3};
    for (SchemeKind kind : {SchemeKind::etd1, SchemeKind::etd2}) {
      const auto out = final_state(s, m, kind, 0.01, 2.0);
      EXPECT_LT(max_abs_difference(out.temperature, damped_propagate(t0, 2.0, lambda)), 1e-12);
    }
  }
}

TEST(Step, ColdTemperatureLeavesFuelUntouched) {
  const auto g = GridSpec::make(1, 256, 20.0);
  ScenarioParams p;
  p.amplitude = 1.0;
  auto s = SystemState{scale(-1.0, initial_data(g, Scenario::gaussian, p)),
                       oracle::random_field(g, 4, 0.0, 2.0), 0.0};
  const auto y0 = s.fuel;
  const auto out = final_state(s, {0.5, 0.3}, SchemeKind::etd2, 0.01, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(out.fuel[i], y0[i]);
}

TEST(Step, SingleEtd1StepOnConstantData) {
  const auto g = GridSpec::make(1, 8, 1.0);
  const ModelParams m{0.7, 0.3};
  const double dt = 0.1;
  const HeatPropagator prop(g, m.lambda, dt);
  const auto out = step_etd1(uniform_state(g, 1.0, 2.0), m, prop);
  const double r = std::exp(-1.0);
  const double phi1 = (1 - std::exp(-m.lambda * dt)) / m.lambda;
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(out.temperature[i], std::exp(-m.lambda * dt) + phi1 * 2.0 * r, 1e-15);
    EXPECT_NEAR(out.fuel[i], 2.0 * std::exp(-m.beta * dt * r), 1e-15);
  }
  EXPECT_DOUBLE_EQ(out.time, dt);
}

TEST(Step, RejectsMismatchedPropagator) {
  const auto g = GridSpec::make(1, 8, 1.0);
  const HeatPropagator prop(g, 0.5, 0.1);
  EXPECT_THROW(step_etd1(uniform_state(g, 1, 1), {0.2, 0.3}, prop), InvalidInput);
  EXPECT_THROW(step_etd2(uniform_state(GridSpec::make(1, 16, 1.0), 1, 1), {0.5, 0.3}, prop),
               InvalidInput);
}

TEST(Convergence, Etd1IsFirstOrder) { EXPECT_NEAR(observed_order(SchemeKind::etd1), 1.0, 0.1); }

TEST(Convergence, Etd2IsSecondOrder) { EXPECT_NEAR(observed_order(SchemeKind::etd2), 2.0, 0.1); }

TEST(Fuel, MonotoneAndNonnegativeEveryStep) {
  const auto g = GridSpec::make(1, 256, 30.0);
  const ModelParams m{0.05, 2.0};
  for (SchemeKind kind : {SchemeKind::etd1, SchemeKind::etd2}) {
    const double dt = 0.05;
    const HeatPropagator prop(g, m.lambda, dt);
    SystemState s{oracle::random_field(g, 21, 0.0, 4.0), oracle::random_field(g, 22, 0.0, 1.0),
                  0.0};
    for (int n = 0; n < 200; ++n) {
      const auto next = step(s, m, prop, kind);
      for (std::size_t i = 0; i < g.size(); ++i) {
        ASSERT_LE(next.fuel[i], s.fuel[i]);
        ASSERT_GE(next.fuel[i], 0.0);
      }
      s = next;
    }
  }
}

TEST(Enthalpy, DriftShrinksWithStep) {
  const auto g = GridSpec::make(1, 512, 40.0);
  const ModelParams m{0.0, 0.3};
  const auto s0 = gaussian_state(g, 5.0, 2.0, 1.0);
  const double e0 = integral(s0.temperature) + integral(s0.fuel) / m.beta;
  std::vector<double> drift;
  for (double dt : {0.02, 0.01, 0.005}) {
    const auto s = final_state(s0, m, SchemeKind::etd2, dt, 2.0);
    drift.push_back(std::abs(integral(s.temperature) + integral(s.fuel) / m.beta - e0));
  }
  EXPECT_LT(drift[0], 1e-3 * e0);
  EXPECT_GT(drift[0] / drift[1], 3.5);
  EXPECT_GT(drift[1] / drift[2], 3.5);
}

TEST(Temperature, StaysAboveHeatFlowOfInitialData) {
  // the forcing Y r(T) is non-negative, so T(t) >= e^{-lambda t} e^{t Laplacian} T0
  const auto g = GridSpec::make(1, 512, 40.0);
  const ModelParams m{0.2, 0.3};
  const auto s0 = gaussian_state(g, 3.0, 1.0, 1.0);
  const auto out = final_state(s0, m, SchemeKind::etd2, 0.01, 1.0);
  const auto lower = damped_propagate(s0.temperature, 1.0, m.lambda);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_GE(out.temperature[i], lower[i] - 1e-12);
}

TEST(Run, DeterministicBitwise) {
  const auto g = GridSpec::make(2, 32, 10.0);
  const auto s0 = gaussian_state(g, 3.0, 1.0, 1.0);
  const auto a = final_state(s0, {0.1, 0.3}, SchemeKind::etd2, 0.01, 0.5);
  const auto b = final_state(s0, {0.1, 0.3}, SchemeKind::etd2, 0.01, 0.5);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(a.temperature[i], b.temperature[i]);
    EXPECT_EQ(a.fuel[i], b.fuel[i]);
  }
}

TEST(Run, ZeroDataStaysZero) {
  const auto g = GridSpec::make(1, 64, 10.0);
  const auto out = final_state(uniform_state(g, 0.0, 0.0), {1.0, 0.3}, SchemeKind::etd2, 0.1, 3.0);
  EXPECT_EQ(out.temperature.max(), 0.0);
  EXPECT_EQ(out.temperature.min(), 0.0);
  EXPECT_EQ(out.fuel.max(), 0.0);
}

TEST(Run, UniformDecayWithoutFuel) {
  const auto g = GridSpec::make(1, 16, 4.0);
  const auto out = final_state(uniform_state(g, 1.0, 0.0), {1.0, 0.3}, SchemeKind::etd1, 0.1, 2.0);
  EXPECT_NEAR(out.temperature[3], std::exp(-2.0), 1e-14);
}

TEST(Run, StiffDampingStaysStable) {
  // lambda dt = 10: the exponential integrator must not amplify
  const auto g = GridSpec::make(1, 64, 10.0);
  const ModelParams m{10.0, 0.3};
  auto s0 = gaussian_state(g, 1.0, 1.0, 1.0);
  const auto out = final_state(s0, m, SchemeKind::etd2, 1.0, 5.0);
  EXPECT_GE(out.temperature.min(), -1e-12);
  EXPECT_LT(out.temperature.max(), s0.temperature.max());
  EXPECT_TRUE(std::isfinite(out.temperature.max()));
}

TEST(Run, RecordsSamplesAndSnapshots) {
  const auto g = GridSpec::make(1, 64, 10.0);
  RunOptions opt;
  opt.horizon = 1.0;
  opt.record_every = 3;
  opt.snapshot_times = {0.0, 0.5, 1.0};
  const auto res = run_simulation(gaussian_state(g, 1.0, 1.0, 1.0), {0.0, 0.3},
                                  {SchemeKind::etd2, 0.1}, opt);
  const auto& samples = res.record.samples();
  // steps 0, 3, 6, 9 and the final step 10
  ASSERT_EQ(samples.size(), 5u);
  EXPECT_DOUBLE_EQ(samples.front().time, 0.0);
  EXPECT_NEAR(samples.back().time, 1.0, 1e-12);
  ASSERT_EQ(res.record.snapshots().size(), 3u);
  EXPECT_NEAR(res.record.snapshots()[1].time, 0.5, 1e-12);
  EXPECT_FALSE(res.stopped_early);
}

TEST(Run, KeepGoingStopsEarly) {
  const auto g = GridSpec::make(1, 64, 10.0);
  RunOptions opt;
  opt.horizon = 1.0;
  opt.keep_going = [](const SystemState& s, const TrajectorySample&) { return s.time < 0.45; };
  const auto res = run_simulation(gaussian_state(g, 1.0, 1.0, 1.0), {0.0, 0.3},
                                  {SchemeKind::etd1, 0.1}, opt);
  EXPECT_TRUE(res.stopped_early);
  EXPECT_NEAR(res.final_state.time, 0.5, 1e-12);
}

TEST(Run, RejectsBadOptions) {
  const auto g = GridSpec::make(1, 64, 10.0);
  const auto s = gaussian_state(g, 1.0, 1.0, 1.0);
  RunOptions opt;
  opt.horizon = 1.0;
  opt.record_every = 0;
  EXPECT_THROW(run_simulation(s, {0, 0.3}, {SchemeKind::etd2, 0.1}, opt), InvalidInput);
  opt.record_every = 1;
  opt.snapshot_times = {2.0};
  EXPECT_THROW(run_simulation(s, {0, 0.3}, {SchemeKind::etd2, 0.1}, opt), InvalidInput);
  opt.snapshot_times.clear();
  EXPECT_THROW(run_simulation(s, {0, 0.3}, {SchemeKind::etd2, 0.3}, opt), InvalidInput);
}
