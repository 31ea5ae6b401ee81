#pragma once

#include <span>
#include <vector>

#include "emberflow/fourier.hpp"
#include "emberflow/grid.hpp"
#include "emberflow/norms.hpp"

namespace emberflow {

/// (1 - exp(-c dt)) / c, the exact integral of exp(-c s) over [0, dt].
/// Switches to dt (1 - c dt / 2) when c dt < 1e-8.
double duhamel_weight(double c, double dt) noexcept;

/// (exp(-c dt) - 1 + c dt) / (c^2 dt): weight of the end-point value when
/// the forcing is linearly interpolated across a step of length dt.
/// Tends to dt / 2 as c dt -> 0 (series used below c dt = 1e-2).
double corrector_weight(double c, double dt) noexcept;

/**
 * Per-mode multipliers for one step of the damped heat flow
 * exp(-lambda dt) exp(dt Laplacian) and its Duhamel quadrature.
 *
 * With c_k = |k|^2 + lambda:
 *   decay      E_k    = exp(-c_k dt)
 *   duhamel    phi1_k = duhamel_weight(c_k, dt)
 *   corrector  phi2_k = corrector_weight(c_k, dt)
 *
 * Immutable after construction.
 */
class HeatPropagator {
 public:
  HeatPropagator(const GridSpec& grid, double lambda, double dt);

  const GridSpec& grid() const noexcept { return grid_; }
  double lambda() const noexcept { return lambda_; }
  double dt() const noexcept { return dt_; }

  std::span<const double> decay_multipliers() const noexcept { return decay_; }
  std::span<const double> duhamel_multipliers() const noexcept { return duhamel_; }
  std::span<const double> corrector_multipliers() const noexcept { return corrector_; }

 private:
  GridSpec grid_;
  double lambda_;
  double dt_;
  std::vector<double> decay_;
  std::vector<double> duhamel_;
  std::vector<double> corrector_;
};

/// exp(t Laplacian) f. Throws InvalidInput for t < 0.
ScalarField heat_propagate(const ScalarField& field, double t);

/// exp(-lambda t) exp(t Laplacian) f. Throws InvalidInput for t < 0 or lambda < 0.
ScalarField damped_propagate(const ScalarField& field, double t, double lambda);

/// Spectral-space version: multiplies every mode by exp(-(|k|^2 + lambda) t).
void damped_propagate_modes(SpectralField& spectrum, double t, double lambda);

/// ||exp(t Laplacian) f||_p / ||f||_p. Throws InvalidInput for the zero field
/// or t <= 0.
double verify_contraction(Lp p, const ScalarField& field, double t);

struct SmoothingFit {
  double slope = 0.0;
  /// exp(intercept) / ||f||_q: the constant in ||D^k e^{t Lap} f||_p ~ C t^slope ||f||_q.
  double constant = 0.0;
  /// -(d / l + k) / 2 with 1/l = 1/q - 1/p.
  double predicted_slope = 0.0;
  double r_squared = 0.0;
  std::vector<double> times;
  std::vector<double> norms;
};

/// Measures ||D^k exp(t Laplacian) f||_p on the given times and fits its
/// log-log slope. Requires 1/q - 1/p in [0, 1] (the exponent l in [1, inf]),
/// at least two positive times, and a nonzero field.
SmoothingFit verify_smoothing(int order, Lp p, Lp q, const ScalarField& field,
                              std::span<const double> times);

}  // namespace emberflow
