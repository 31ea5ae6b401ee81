#include "emberflow/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace emberflow {

GridSpec GridSpec::make(int dim, std::size_t n, double extent) {
  if (dim != 1 && dim != 2) {
    throw InvalidInput("grid: dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (n < 8 || !std::has_single_bit(n)) {
    throw InvalidInput("grid: points per axis must be a power of two >= 8, got " +
                       std::to_string(n));
  }
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw InvalidInput("grid: extent must be positive and finite");
  }
  return GridSpec(dim, n, extent);
}

double GridSpec::cell_volume() const noexcept {
  const double h = spacing();
  return dim_ == 1 ? h : h * h;
}

Position GridSpec::position(std::size_t flat_index) const noexcept {
  const double h = spacing();
  if (dim_ == 1) return {static_cast<double>(flat_index) * h, 0.0};
  return {static_cast<double>(flat_index / n_) * h, static_cast<double>(flat_index % n_) * h};
}

double GridSpec::wavenumber(std::size_t bin) const noexcept {
  const auto half = static_cast<long long>(n_ / 2);
  auto j = static_cast<long long>(bin);
  if (j >= half) j -= static_cast<long long>(n_);
  return 2.0 * std::numbers::pi * static_cast<double>(j) / extent_;
}

std::array<double, 2> GridSpec::wavevector(std::size_t flat_mode) const noexcept {
  if (dim_ == 1) return {wavenumber(flat_mode), 0.0};
  return {wavenumber(flat_mode / n_), wavenumber(flat_mode % n_)};
}

std::vector<double> GridSpec::squared_wavenumbers() const {
  std::vector<double> k2(size());
  for (std::size_t m = 0; m < k2.size(); ++m) {
    const auto k = wavevector(m);
    k2[m] = k[0] * k[0] + k[1] * k[1];
  }
  return k2;
}

bool GridSpec::is_nyquist(std::size_t flat_mode) const noexcept {
  const std::size_t half = n_ / 2;
  if (dim_ == 1) return flat_mode == half;
  return flat_mode / n_ == half || flat_mode % n_ == half;
}

std::string GridSpec::describe() const {
  std::ostringstream os;
  os << "d=" << dim_ << " n=" << n_ << " L=" << extent_;
  return os.str();
}

ScalarField::ScalarField(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidInput("field: expected " + std::to_string(grid_.size()) + " values, got " +
                       std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NumericalDefect("field: non-finite value at index " + std::to_string(i));
    }
  }
}

ScalarField ScalarField::constant(const GridSpec& grid, double value) {
  return ScalarField(grid, std::vector<double>(grid.size(), value));
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

void SystemState::validate() const {
  if (!(temperature.grid() == fuel.grid())) {
    throw InvalidInput("state: temperature and fuel live on different grids");
  }
  if (fuel.min() < 0.0) throw InvalidInput("state: fuel density must be nonnegative");
  if (!(time >= 0.0)) throw InvalidInput("state: time must be nonnegative");
}

ScalarField make_field(const GridSpec& grid, const FieldGenerator& generator) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Position x = grid.position(i);
    const double v = generator(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "make_field: generator returned a non-finite value at x=(" << x[0];
      if (grid.dim() == 2) os << ", " << x[1];
      os << ")";
      throw InvalidInput(os.str());
    }
    values[i] = v;
  }
  return ScalarField(grid, std::move(values));
}

ScalarField axpby(double a, const ScalarField& f, double b, const ScalarField& g) {
  if (!(f.grid() == g.grid())) throw InvalidInput("axpby: grid mismatch");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * f[i] + b * g[i];
  return ScalarField(f.grid(), std::move(out));
}

ScalarField scale(double a, const ScalarField& f) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v *= a;
  return ScalarField(f.grid(), std::move(out));
}

double max_abs_difference(const ScalarField& f, const ScalarField& g) {
  if (!(f.grid() == g.grid())) throw InvalidInput("max_abs_difference: grid mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

}  // namespace emberflow
