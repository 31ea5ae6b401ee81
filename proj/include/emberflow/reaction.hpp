#pragma once

#include "emberflow/grid.hpp"

namespace emberflow {

/// Heat-loss rate lambda and fuel consumption ratio beta, both >= 0.
struct ModelParams {
  double lambda = 0.0;
  double beta = 0.0;

  void validate() const;
  bool operator==(const ModelParams&) const = default;
};

/// Largest temperature at which exp(-1/T) underflows to exactly 0 in double
/// precision (1 / 745.13...). The rate is 0 at and below this point.
inline constexpr double kRateUnderflowTemperature = 1.0 / 745.1332191019412;

/// Arrhenius rate: exp(-1/T) for T > 0, 0 for T <= 0. Range [0, 1).
double arrhenius_rate(double temperature) noexcept;

/// exp(-1/T) / T^2 for T > 0, 0 otherwise.
double arrhenius_rate_derivative(double temperature) noexcept;

/// Pointwise arrhenius_rate.
ScalarField rate_field(const ScalarField& temperature);

/// Smallest C with r(T) <= C T^p on [0, 1]:
/// exp(-1) for p = 0, max((p/e)^p, exp(-1)) for p >= 1. The interior
/// maximum of r(T) / T^p sits at T = 1/p.
double poly_domination_constant(int power);

/// sup of r(T) / T over 0 < T <= t_max; r(T)/T peaks at T = 1 with value 1/e.
double rate_over_temperature_sup(double t_max) noexcept;

}  // namespace emberflow
