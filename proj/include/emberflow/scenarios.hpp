#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "emberflow/grid.hpp"

namespace emberflow {

/// Named initial profiles.
///
///  - zero:     identically 0
///  - uniform:  identically A (A = 1 is the classical uniform fuel bed)
///  - gaussian: A exp(-|x - c|^2 / (2 sigma^2))
///  - plateau:  indicator of the cube |x - c|_inf < half_width, convolved with a
///              Gaussian of width edge_width (C-infinity edges), amplitude A
///  - compact:  A exp(1 - 1 / (1 - |x - c|^2 / R^2)) inside radius R, 0 outside
///
/// Distances to the centre use the minimum periodic image, so every profile is
/// periodic on the box. The centre defaults to the middle of the box.
enum class Scenario { zero, uniform, gaussian, plateau, compact };

struct ScenarioParams {
  double amplitude = 1.0;
  double sigma = 1.0;
  double half_width = 1.0;
  double edge_width = 0.1;
  double radius = 1.0;
  std::optional<Position> center;

  bool operator==(const ScenarioParams&) const = default;
};

Scenario parse_scenario(std::string_view name);
std::string_view scenario_name(Scenario scenario);

/// Throws InvalidInput for negative amplitude or non-positive widths.
ScalarField initial_data(const GridSpec& grid, Scenario scenario, const ScenarioParams& params);
ScalarField initial_data(const GridSpec& grid, std::string_view name, const ScenarioParams& params);

}  // namespace emberflow
