#pragma once

#include <complex>
#include <span>
#include <vector>

#include "emberflow/grid.hpp"

namespace emberflow {

using Complex = std::complex<double>;

/// Discrete Fourier coefficients of a field, in FFT bin order.
///
/// Normalization: forward is unnormalized, so modes[0] / n^d is the mean of
/// the field; inverse divides by n^d.
struct SpectralField {
  GridSpec grid;
  std::vector<Complex> modes;
};

/// Planned in-place complex transforms for one grid shape. Plans are
/// created once per (d, n) and shared; execution is thread-safe.
class FourierTransform {
 public:
  explicit FourierTransform(const GridSpec& grid);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  void forward(std::vector<Complex>& data) const;
  /// Unnormalized backward transform.
  void backward(std::vector<Complex>& data) const;

  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_;
  void* forward_plan_;
  void* backward_plan_;
};

const FourierTransform& fourier_for(const GridSpec& grid);

SpectralField forward_transform(const ScalarField& field);
ScalarField inverse_transform(const SpectralField& spectrum);
ScalarField inverse_transform(const GridSpec& grid, std::vector<Complex> modes);

/// Partial derivative d^{a}/dx^{a} d^{b}/dy^{b} via the multiplier (i k)^order.
/// Nyquist bins are dropped for odd total order so the result stays real.
ScalarField spectral_partial(const SpectralField& spectrum, int order_x, int order_y = 0);

}  // namespace emberflow
