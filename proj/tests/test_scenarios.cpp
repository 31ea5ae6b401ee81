#include <gtest/gtest.h>

#include <cmath>

#include "emberflow/norms.hpp"
#include "emberflow/scenarios.hpp"

using namespace emberflow;

TEST(Scenarios, UniformFuelBedIsConstantOne) {
  const auto g = GridSpec::make(1, 64, 10.0);
  const auto f = initial_data(g, "uniform", {});
  for (double v : f.values()) EXPECT_EQ(v, 1.0);
}

TEST(Scenarios, ZeroAmplitudePlateauIsZero) {
  const auto g = GridSpec::make(2, 32, 10.0);
  ScenarioParams p;
  p.amplitude = 0.0;
  const auto f = initial_data(g, Scenario::plateau, p);
  for (double v : f.values()) EXPECT_EQ(v, 0.0);
}

TEST(Scenarios, GaussianMassMatchesClosedForm) {
  const auto g = GridSpec::make(1, 4096, 200.0);
  ScenarioParams p;
  p.amplitude = 1.7;
  p.sigma = 2.0;
  const auto f = initial_data(g, Scenario::gaussian, p);
  EXPECT_NEAR(lp_norm(f, Lp::one), 1.7 * 2.0 * std::sqrt(2 * M_PI), 1e-8);
  EXPECT_DOUBLE_EQ(f.max(), 1.7);
}

TEST(Scenarios, GaussianIn2DPeaksAtCentre) {
  const auto g = GridSpec::make(2, 64, 20.0);
  ScenarioParams p;
  p.sigma = 1.5;
  const auto f = initial_data(g, Scenario::gaussian, p);
  EXPECT_DOUBLE_EQ(f[32 * 64 + 32], 1.0);
  EXPECT_NEAR(lp_norm(f, Lp::one), 2 * M_PI * 1.5 * 1.5, 1e-8);
}

TEST(Scenarios, PlateauIsSmoothIndicator) {
  const auto g = GridSpec::make(1, 1024, 20.0);
  ScenarioParams p;
  p.amplitude = 2.0;
  p.half_width = 2.5;
  p.edge_width = 0.1;
  const auto f = initial_data(g, Scenario::plateau, p);
  EXPECT_NEAR(f[512], 2.0, 1e-12);  // centre
  EXPECT_NEAR(f[0], 0.0, 1e-12);    // far edge of the box
  // mass of a mollified indicator equals that of the indicator
  EXPECT_NEAR(lp_norm(f, Lp::one), 2.0 * 5.0, 1e-9);
  // value at the nominal edge x = 12.5 (node 640) is half the amplitude
  const std::size_t edge = 640;
  EXPECT_NEAR(f[edge], 1.0, 1e-9);
}

TEST(Scenarios, CompactSupport) {
  const auto g = GridSpec::make(1, 512, 50.0);
  ScenarioParams p;
  p.radius = 5.0;
  const auto f = initial_data(g, Scenario::compact, p);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.position(i)[0];
    if (std::abs(x - 25.0) >= 5.0) EXPECT_EQ(f[i], 0.0) << x;
    else EXPECT_GT(f[i], 0.0) << x;
  }
  EXPECT_DOUBLE_EQ(f[256], 1.0);
}

TEST(Scenarios, PeriodicMinimumImage) {
  const auto g = GridSpec::make(1, 64, 10.0);
  ScenarioParams p;
  p.center = Position{0.0, 0.0};
  const auto f = initial_data(g, Scenario::gaussian, p);
  // symmetric about x = 0 on the periodic box
  for (std::size_t i = 1; i < 32; ++i) EXPECT_NEAR(f[i], f[64 - i], 1e-15);
}

TEST(Scenarios, RejectsBadParameters) {
  const auto g = GridSpec::make(1, 64, 10.0);
  ScenarioParams p;
  p.amplitude = -1.0;
  EXPECT_THROW(initial_data(g, Scenario::gaussian, p), InvalidInput);
  p = {};
  p.sigma = 0.0;
  EXPECT_THROW(initial_data(g, Scenario::gaussian, p), InvalidInput);
  p = {};
  p.edge_width = -0.1;
  EXPECT_THROW(initial_data(g, Scenario::plateau, p), InvalidInput);
  EXPECT_THROW(initial_data(g, "volcano", {}), InvalidInput);
}

TEST(Scenarios, NamesRoundTrip) {
  for (auto s : {Scenario::zero, Scenario::uniform, Scenario::gaussian, Scenario::plateau,
                 Scenario::compact}) {
    EXPECT_EQ(parse_scenario(scenario_name(s)), s);
  }
}
