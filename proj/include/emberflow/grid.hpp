#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace emberflow {

/// Raised for violated preconditions on grids, fields, parameters and configs.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a simulation produces a state the model cannot produce
/// (non-finite values). Always a numerical defect, never model behaviour.
class NumericalDefect : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cell coordinate; the second component is unused when d = 1.
using Position = std::array<double, 2>;

/**
 * Periodic uniform grid on [0, L)^d, d in {1, 2}, with n nodes per axis at
 * x_i = i * h, h = L / n. n is a power of two and at least 8.
 *
 * Values on the grid are stored row-major: flat index = i0 * n + i1 in 2D.
 */
class GridSpec {
 public:
  static GridSpec make(int dim, std::size_t n, double extent);

  int dim() const noexcept { return dim_; }
  std::size_t n() const noexcept { return n_; }
  double extent() const noexcept { return extent_; }
  double spacing() const noexcept { return extent_ / static_cast<double>(n_); }
  /// Number of nodes, n^d.
  std::size_t size() const noexcept { return dim_ == 1 ? n_ : n_ * n_; }
  /// h^d, the quadrature weight of one node.
  double cell_volume() const noexcept;

  Position position(std::size_t flat_index) const noexcept;

  /// Angular wavenumber 2 pi j / L of FFT bin j, with j mapped into [-n/2, n/2).
  double wavenumber(std::size_t bin) const noexcept;
  /// Per-axis wavenumbers of the flat mode index (second entry 0 when d = 1).
  std::array<double, 2> wavevector(std::size_t flat_mode) const noexcept;
  /// |k|^2 for every flat mode index.
  std::vector<double> squared_wavenumbers() const;
  /// True for modes sitting on a Nyquist bin along any axis.
  bool is_nyquist(std::size_t flat_mode) const noexcept;

  bool operator==(const GridSpec&) const = default;

  std::string describe() const;

 private:
  GridSpec(int dim, std::size_t n, double extent) : dim_(dim), n_(n), extent_(extent) {}

  int dim_;
  std::size_t n_;
  double extent_;
};

/// Real samples on a GridSpec. Immutable; every value is finite.
class ScalarField {
 public:
  ScalarField(GridSpec grid, std::vector<double> values);

  static ScalarField constant(const GridSpec& grid, double value);
  static ScalarField zeros(const GridSpec& grid) { return constant(grid, 0.0); }

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  double min() const;
  double max() const;
  /// Arithmetic mean of the samples.
  double mean() const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

/// Temperature and fuel density at one instant.
struct SystemState {
  ScalarField temperature;
  ScalarField fuel;
  double time = 0.0;

  /// Throws InvalidInput unless both fields share a grid, fuel >= 0 and time >= 0.
  void validate() const;
};

using FieldGenerator = std::function<double(const Position&)>;

/// Samples `generator` at every node. Rejects non-finite output, naming the node.
ScalarField make_field(const GridSpec& grid, const FieldGenerator& generator);

/// Pointwise a * f + b * g on a shared grid.
ScalarField axpby(double a, const ScalarField& f, double b, const ScalarField& g);
ScalarField scale(double a, const ScalarField& f);

/// Sup-norm of f - g.
double max_abs_difference(const ScalarField& f, const ScalarField& g);

}  // namespace emberflow
