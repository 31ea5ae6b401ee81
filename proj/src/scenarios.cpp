#include "emberflow/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace emberflow {

namespace {

// Signed distance to the nearest periodic image of c.
double periodic_offset(double x, double c, double extent) { return std::remainder(x - c, extent); }

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidInput(std::string("initial data: ") + what + " must be positive and finite");
  }
}

}  // namespace

Scenario parse_scenario(std::string_view name) {
  if (name == "zero") return Scenario::zero;
  if (name == "uniform") return Scenario::uniform;
  if (name == "gaussian") return Scenario::gaussian;
  if (name == "plateau") return Scenario::plateau;
  if (name == "compact") return Scenario::compact;
  throw InvalidInput("initial data: unknown scenario '" + std::string(name) + "'");
}

std::string_view scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::zero: return "zero";
    case Scenario::uniform: return "uniform";
    case Scenario::gaussian: return "gaussian";
    case Scenario::plateau: return "plateau";
    case Scenario::compact: return "compact";
  }
  return "unknown";
}

ScalarField initial_data(const GridSpec& grid, Scenario scenario, const ScenarioParams& params) {
  const double a = params.amplitude;
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw InvalidInput("initial data: amplitude must be nonnegative and finite");
  }
  const double mid = 0.5 * grid.extent();
  const Position c = params.center.value_or(Position{mid, grid.dim() == 2 ? mid : 0.0});
  const double extent = grid.extent();
  const int dim = grid.dim();

  auto offsets = [=](const Position& x) {
    Position s{periodic_offset(x[0], c[0], extent), 0.0};
    if (dim == 2) s[1] = periodic_offset(x[1], c[1], extent);
    return s;
  };

  switch (scenario) {
    case Scenario::zero:
      return ScalarField::zeros(grid);
    case Scenario::uniform:
      return ScalarField::constant(grid, a);
    case Scenario::gaussian: {
      require_positive(params.sigma, "sigma");
      const double two_var = 2.0 * params.sigma * params.sigma;
      return make_field(grid, [=](const Position& x) {
        const Position s = offsets(x);
        return a * std::exp(-(s[0] * s[0] + s[1] * s[1]) / two_var);
      });
    }
    case Scenario::plateau: {
      require_positive(params.half_width, "half_width");
      require_positive(params.edge_width, "edge_width");
      const double hw = params.half_width;
      const double scale = 1.0 / (std::numbers::sqrt2 * params.edge_width);
      auto edge = [=](double s) {
        return 0.5 * (std::erf((s + hw) * scale) - std::erf((s - hw) * scale));
      };
      return make_field(grid, [=](const Position& x) {
        const Position s = offsets(x);
        double v = a * edge(s[0]);
        if (dim == 2) v *= edge(s[1]);
        return v;
      });
    }
    case Scenario::compact: {
      require_positive(params.radius, "radius");
      const double r2 = params.radius * params.radius;
      return make_field(grid, [=](const Position& x) {
        const Position s = offsets(x);
        const double rho2 = (s[0] * s[0] + s[1] * s[1]) / r2;
        if (rho2 >= 1.0) return 0.0;
        return a * std::exp(1.0 - 1.0 / (1.0 - rho2));
      });
    }
  }
  throw InvalidInput("initial data: unhandled scenario");
}

ScalarField initial_data(const GridSpec& grid, std::string_view name, const ScenarioParams& params) {
  return initial_data(grid, parse_scenario(name), params);
}

}  // namespace emberflow
