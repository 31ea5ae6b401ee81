#include "emberflow/semigroup.hpp"

#include <cmath>

#include "emberflow/fit.hpp"

namespace emberflow {

double duhamel_weight(double c, double dt) noexcept {
  const double z = c * dt;
  if (z < 1e-8) return dt * (1.0 - 0.5 * z);
  return -std::expm1(-z) / c;
}

double corrector_weight(double c, double dt) noexcept {
  const double z = c * dt;
  if (z < 1e-2) {
    return dt * (0.5 - z * (1.0 / 6.0 - z * (1.0 / 24.0 - z * (1.0 / 120.0 - z / 720.0))));
  }
  return (std::expm1(-z) + z) / (c * z);
}

HeatPropagator::HeatPropagator(const GridSpec& grid, double lambda, double dt)
    : grid_(grid), lambda_(lambda), dt_(dt) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidInput("propagator: lambda must be finite and >= 0");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("propagator: dt must be positive");
  const std::vector<double> k2 = grid.squared_wavenumbers();
  decay_.resize(k2.size());
  duhamel_.resize(k2.size());
  corrector_.resize(k2.size());
  for (std::size_t m = 0; m < k2.size(); ++m) {
    const double c = k2[m] + lambda;
    decay_[m] = std::exp(-c * dt);
    duhamel_[m] = duhamel_weight(c, dt);
    corrector_[m] = corrector_weight(c, dt);
  }
}

void damped_propagate_modes(SpectralField& spectrum, double t, double lambda) {
  if (!(t >= 0.0)) throw InvalidInput("heat flow: duration must be >= 0");
  if (!(lambda >= 0.0)) throw InvalidInput("heat flow: lambda must be >= 0");
  if (t == 0.0 && lambda == 0.0) return;
  const GridSpec& grid = spectrum.grid;
  for (std::size_t m = 0; m < spectrum.modes.size(); ++m) {
    const auto k = grid.wavevector(m);
    spectrum.modes[m] *= std::exp(-(k[0] * k[0] + k[1] * k[1] + lambda) * t);
  }
}

ScalarField damped_propagate(const ScalarField& field, double t, double lambda) {
  if (!(t >= 0.0)) throw InvalidInput("heat flow: duration must be >= 0");
  if (!(lambda >= 0.0)) throw InvalidInput("heat flow: lambda must be >= 0");
  if (t == 0.0) return field;
  SpectralField spectrum = forward_transform(field);
  damped_propagate_modes(spectrum, t, lambda);
  return inverse_transform(spectrum);
}

ScalarField heat_propagate(const ScalarField& field, double t) {
  return damped_propagate(field, t, 0.0);
}

double verify_contraction(Lp p, const ScalarField& field, double t) {
  if (!(t > 0.0)) throw InvalidInput("verify_contraction: t must be positive");
  const double before = lp_norm(field, p);
  if (before == 0.0) throw InvalidInput("verify_contraction: zero field, ratio undefined");
  return lp_norm(heat_propagate(field, t), p) / before;
}

SmoothingFit verify_smoothing(int order, Lp p, Lp q, const ScalarField& field,
                              std::span<const double> times) {
  const double inv_l = reciprocal(q) - reciprocal(p);
  if (inv_l < 0.0 || inv_l > 1.0) {
    throw InvalidInput("verify_smoothing: need 1/p = 1/q - 1/l with l in [1, inf]");
  }
  if (order < 0) throw InvalidInput("verify_smoothing: derivative order must be >= 0");
  if (times.size() < 2) throw InvalidInput("verify_smoothing: need at least two times");
  const double input_norm = lp_norm(field, q);
  if (input_norm == 0.0) throw InvalidInput("verify_smoothing: zero field");

  SmoothingFit fit;
  fit.predicted_slope = -0.5 * (field.grid().dim() * inv_l + order);
  const SpectralField spectrum = forward_transform(field);
  std::vector<double> log_t, log_norm;
  for (double t : times) {
    if (!(t > 0.0)) throw InvalidInput("verify_smoothing: times must be positive");
    SpectralField flowed = spectrum;
    damped_propagate_modes(flowed, t, 0.0);
    const double value = derivative_norm(inverse_transform(flowed), order, p);
    if (!(value > 0.0)) throw InvalidInput("verify_smoothing: norm vanished, cannot fit a rate");
    fit.times.push_back(t);
    fit.norms.push_back(value);
    log_t.push_back(std::log(t));
    log_norm.push_back(std::log(value));
  }
  const LineFit line = fit_line(log_t, log_norm);
  fit.slope = line.slope;
  fit.r_squared = line.r_squared;
  fit.constant = std::exp(line.intercept) / input_norm;
  return fit;
}

}  // namespace emberflow
