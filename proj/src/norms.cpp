#include "emberflow/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "emberflow/fourier.hpp"

namespace emberflow {

double reciprocal(Lp p) noexcept {
  switch (p) {
    case Lp::one: return 1.0;
    case Lp::two: return 0.5;
    case Lp::infinity: return 0.0;
  }
  return 0.0;
}

std::string_view lp_name(Lp p) noexcept {
  switch (p) {
    case Lp::one: return "1";
    case Lp::two: return "2";
    case Lp::infinity: return "inf";
  }
  return "?";
}

Lp parse_lp(std::string_view text) {
  if (text == "1") return Lp::one;
  if (text == "2") return Lp::two;
  if (text == "inf" || text == "infinity") return Lp::infinity;
  throw InvalidInput("unknown Lebesgue exponent '" + std::string(text) + "' (use 1, 2 or inf)");
}

namespace {

double lp_of_values(std::span<const double> v, double weight, Lp p) {
  switch (p) {
    case Lp::one: {
      double s = 0.0;
      for (double x : v) s += std::abs(x);
      return weight * s;
    }
    case Lp::two: {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(weight * s);
    }
    case Lp::infinity: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    }
  }
  return 0.0;
}

}  // namespace

double lp_norm(const ScalarField& field, Lp p) {
  return lp_of_values(field.values(), field.grid().cell_volume(), p);
}

double integral(const ScalarField& field) {
  double s = 0.0;
  for (double x : field.values()) s += x;
  return field.grid().cell_volume() * s;
}

double h1dot_seminorm(const ScalarField& field) {
  const GridSpec& grid = field.grid();
  const SpectralField spectrum = forward_transform(field);
  const std::vector<double> k2 = grid.squared_wavenumbers();
  double s = 0.0;
  for (std::size_t m = 0; m < k2.size(); ++m) s += k2[m] * std::norm(spectrum.modes[m]);
  const double n_total = static_cast<double>(grid.size());
  const double volume = std::pow(grid.extent(), grid.dim());
  return std::sqrt(s * volume / (n_total * n_total));
}

double derivative_norm(const ScalarField& field, int order, Lp p) {
  if (order < 0) throw InvalidInput("derivative_norm: negative order");
  if (order == 0) return lp_norm(field, p);
  const GridSpec& grid = field.grid();
  const SpectralField spectrum = forward_transform(field);
  std::vector<double> magnitude2(field.size(), 0.0);
  const int y_orders = grid.dim() == 2 ? order : 0;
  for (int oy = 0; oy <= y_orders; ++oy) {
    const ScalarField partial = spectral_partial(spectrum, order - oy, oy);
    for (std::size_t i = 0; i < magnitude2.size(); ++i) magnitude2[i] += partial[i] * partial[i];
  }
  for (double& v : magnitude2) v = std::sqrt(v);
  return lp_of_values(magnitude2, grid.cell_volume(), p);
}

double grad_sup(const ScalarField& field) { return derivative_norm(field, 1, Lp::infinity); }

double boundary_fraction(const ScalarField& field) {
  const GridSpec& grid = field.grid();
  const double margin = grid.extent() / 8.0;
  const double upper = grid.extent() - margin;
  double total = 0.0;
  double near = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double a = std::abs(field[i]);
    total += a;
    const Position x = grid.position(i);
    bool edge = x[0] < margin || x[0] > upper;
    if (grid.dim() == 2) edge = edge || x[1] < margin || x[1] > upper;
    if (edge) near += a;
  }
  return total > 0.0 ? near / total : 0.0;
}

}  // namespace emberflow
