#include "emberflow/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace emberflow {

void ModelParams::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidInput("model: lambda must be finite and >= 0");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw InvalidInput("model: beta must be finite and >= 0");
  }
}

double arrhenius_rate(double temperature) noexcept {
  if (!(temperature > 0.0)) return 0.0;
  return std::exp(-1.0 / temperature);
}

double arrhenius_rate_derivative(double temperature) noexcept {
  if (!(temperature > 0.0)) return 0.0;
  return std::exp(-1.0 / temperature) / (temperature * temperature);
}

ScalarField rate_field(const ScalarField& temperature) {
  std::vector<double> out(temperature.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = arrhenius_rate(temperature[i]);
  return ScalarField(temperature.grid(), std::move(out));
}

double poly_domination_constant(int power) {
  if (power < 0) throw InvalidInput("poly_domination_constant: power must be >= 0");
  const double endpoint = std::exp(-1.0);
  if (power == 0) return endpoint;
  const double p = power;
  return std::max(std::pow(p / std::numbers::e, p), endpoint);
}

double rate_over_temperature_sup(double t_max) noexcept {
  if (!(t_max > 0.0)) return 0.0;
  if (t_max >= 1.0) return std::exp(-1.0);
  return arrhenius_rate(t_max) / t_max;
}

}  // namespace emberflow
