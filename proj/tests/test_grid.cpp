#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "emberflow/fourier.hpp"
#include "emberflow/grid.hpp"
#include "oracles.hpp"

using namespace emberflow;

TEST(GridSpec, AcceptsValidShapes) {
  const auto g = GridSpec::make(1, 8, 2.0);
  EXPECT_EQ(g.size(), 8u);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.25);
  EXPECT_DOUBLE_EQ(g.spacing() * static_cast<double>(g.n()), g.extent());
  const auto g2 = GridSpec::make(2, 16, 4.0);
  EXPECT_EQ(g2.size(), 256u);
  EXPECT_DOUBLE_EQ(g2.cell_volume(), 0.0625);
}

TEST(GridSpec, RejectsInvalidShapes) {
  EXPECT_THROW(GridSpec::make(3, 8, 1.0), InvalidInput);
  EXPECT_THROW(GridSpec::make(0, 8, 1.0), InvalidInput);
  EXPECT_THROW(GridSpec::make(1, 4, 1.0), InvalidInput);
  EXPECT_THROW(GridSpec::make(1, 100, 1.0), InvalidInput);
  EXPECT_THROW(GridSpec::make(1, 8, 0.0), InvalidInput);
  EXPECT_THROW(GridSpec::make(1, 8, -1.0), InvalidInput);
  EXPECT_THROW(GridSpec::make(1, 8, std::numeric_limits<double>::infinity()), InvalidInput);
}

TEST(GridSpec, NodesAreLeftAligned) {
  const auto g = GridSpec::make(2, 8, 8.0);
  EXPECT_DOUBLE_EQ(g.position(0)[0], 0.0);
  // row-major: flat = i0 * n + i1
  const auto p = g.position(3 * 8 + 5);
  EXPECT_DOUBLE_EQ(p[0], 3.0);
  EXPECT_DOUBLE_EQ(p[1], 5.0);
}

TEST(GridSpec, WavenumbersSpanSymmetricRange) {
  const auto g = GridSpec::make(1, 8, 2.0 * M_PI);
  EXPECT_DOUBLE_EQ(g.wavenumber(0), 0.0);
  EXPECT_DOUBLE_EQ(g.wavenumber(1), 1.0);
  EXPECT_DOUBLE_EQ(g.wavenumber(3), 3.0);
  EXPECT_DOUBLE_EQ(g.wavenumber(4), -4.0);
  EXPECT_DOUBLE_EQ(g.wavenumber(7), -1.0);
  EXPECT_TRUE(g.is_nyquist(4));
  EXPECT_FALSE(g.is_nyquist(3));
}

TEST(ScalarField, RejectsNonFiniteAndWrongSize) {
  const auto g = GridSpec::make(1, 8, 1.0);
  EXPECT_THROW(ScalarField(g, std::vector<double>(7, 0.0)), InvalidInput);
  std::vector<double> v(8, 0.0);
  v[3] = std::nan("");
  EXPECT_THROW(ScalarField(g, v), NumericalDefect);
}

TEST(MakeField, ConstantGenerator) {
  const auto g = GridSpec::make(2, 8, 3.0);
  const auto f = make_field(g, [](const Position&) { return 1.0; });
  for (double v : f.values()) EXPECT_EQ(v, 1.0);
}

TEST(MakeField, GaussianBumpValues) {
  const auto g = GridSpec::make(1, 64, 16.0);
  const double c = 8.0;
  const auto bump = [c](double a, double s) {
    return [=](const Position& x) { return a * std::exp(-(x[0] - c) * (x[0] - c) / (2 * s * s)); };
  };
  const auto f = make_field(g, bump(1.0, 1.0));
  EXPECT_DOUBLE_EQ(f[32], 1.0);
  const auto h = make_field(g, bump(2.0, 1.0));
  // node 36 sits at x = 9 = centre + 1
  EXPECT_NEAR(h[36], 1.21306131942526684, 1e-14);
}

TEST(MakeField, NonFiniteOutputNamesCoordinate) {
  const auto g = GridSpec::make(1, 8, 8.0);
  try {
    make_field(g, [](const Position& x) { return x[0] == 3.0 ? std::nan("") : 0.0; });
    FAIL() << "expected InvalidInput";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("x=(3)"), std::string::npos) << e.what();
  }
}

TEST(MakeField, Deterministic) {
  const auto g = GridSpec::make(2, 32, 5.0);
  const auto gen = [](const Position& x) { return std::sin(x[0]) * std::cos(3 * x[1]); };
  const auto a = make_field(g, gen);
  const auto b = make_field(g, gen);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Fourier, ConstantHasOnlyZeroMode) {
  const auto g = GridSpec::make(1, 16, 1.0);
  const auto s = forward_transform(ScalarField::constant(g, 2.5));
  EXPECT_NEAR(s.modes[0].real(), 2.5 * 16, 1e-12);
  for (std::size_t k = 1; k < s.modes.size(); ++k) EXPECT_LT(std::abs(s.modes[k]), 1e-12);
}

TEST(Fourier, CosineHasTwoConjugateModes) {
  const double L = 3.0;
  const auto g = GridSpec::make(1, 32, L);
  const auto f = make_field(g, [L](const Position& x) { return std::cos(2 * M_PI * x[0] / L); });
  const auto s = forward_transform(f);
  // unnormalized forward transform: each of the modes j = +-1 carries n/2
  EXPECT_NEAR(s.modes[1].real(), 16.0, 1e-12);
  EXPECT_NEAR(s.modes[31].real(), 16.0, 1e-12);
  EXPECT_NEAR(std::abs(s.modes[1] - std::conj(s.modes[31])), 0.0, 1e-12);
  for (std::size_t k = 0; k < 32; ++k) {
    if (k != 1 && k != 31) EXPECT_LT(std::abs(s.modes[k]), 1e-12) << k;
  }
}

TEST(Fourier, RoundTripOnRandomFields) {
  for (unsigned seed = 0; seed < 100; ++seed) {
    const auto g = seed % 2 == 0 ? GridSpec::make(1, 256, 7.0) : GridSpec::make(2, 32, 7.0);
    const auto f = oracle::random_field(g, seed);
    const auto back = inverse_transform(forward_transform(f));
    double scale = 0.0;
    for (double v : f.values()) scale = std::max(scale, std::abs(v));
    EXPECT_LT(max_abs_difference(f, back) / scale, 1e-12) << "seed " << seed;
  }
}

TEST(Fourier, MeanIsZeroModeOverPointCount) {
  for (int d : {1, 2}) {
    const auto g = GridSpec::make(d, 16, 2.0);
    const auto f = oracle::random_field(g, 7, 0.0, 3.0);
    const auto s = forward_transform(f);
    EXPECT_NEAR(s.modes[0].real() / static_cast<double>(g.size()), f.mean(), 1e-14);
  }
}

TEST(Fourier, SizeMismatchRejected) {
  const auto g = GridSpec::make(1, 16, 2.0);
  EXPECT_THROW(inverse_transform(g, std::vector<Complex>(8)), InvalidInput);
}

TEST(Fourier, SpectralDerivativeOfSine) {
  const double L = 10.0;
  const auto g = GridSpec::make(1, 64, L);
  const double k = 2 * M_PI * 3 / L;
  const auto f = make_field(g, [k](const Position& x) { return std::sin(k * x[0]); });
  const auto df = spectral_partial(forward_transform(f), 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(df[i], k * std::cos(k * g.position(i)[0]), 1e-12);
  }
}

TEST(FieldAlgebra, AxpbyAndScale) {
  const auto g = GridSpec::make(1, 8, 1.0);
  const auto a = ScalarField::constant(g, 2.0);
  const auto b = ScalarField::constant(g, 3.0);
  EXPECT_DOUBLE_EQ(axpby(2.0, a, -1.0, b)[0], 1.0);
  EXPECT_DOUBLE_EQ(scale(0.5, a)[5], 1.0);
  EXPECT_THROW(axpby(1.0, a, 1.0, ScalarField::zeros(GridSpec::make(1, 16, 1.0))), InvalidInput);
}

TEST(SystemState, RejectsNegativeFuelAndMismatchedGrids) {
  const auto g = GridSpec::make(1, 8, 1.0);
  SystemState ok{ScalarField::zeros(g), ScalarField::constant(g, 1.0), 0.0};
  EXPECT_NO_THROW(ok.validate());
  SystemState neg{ScalarField::zeros(g), ScalarField::constant(g, -1.0), 0.0};
  EXPECT_THROW(neg.validate(), InvalidInput);
  SystemState mixed{ScalarField::zeros(g), ScalarField::zeros(GridSpec::make(1, 16, 1.0)), 0.0};
  EXPECT_THROW(mixed.validate(), InvalidInput);
}
