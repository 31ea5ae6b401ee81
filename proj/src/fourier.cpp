#include "emberflow/fourier.hpp"

#include <fftw3.h>

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace emberflow {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan make_plan(const GridSpec& grid, int sign) {
  const int n = static_cast<int>(grid.n());
  // FFTW_ESTIMATE never touches the arrays, so a scratch pointer is enough.
  auto* scratch = fftw_alloc_complex(grid.size());
  fftw_plan plan = grid.dim() == 1
                       ? fftw_plan_dft_1d(n, scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
                       : fftw_plan_dft_2d(n, n, scratch, scratch, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  if (plan == nullptr) throw std::runtime_error("fourier: FFTW planning failed");
  return plan;
}

fftw_complex* as_fftw(std::vector<Complex>& data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

FourierTransform::FourierTransform(const GridSpec& grid) : size_(grid.size()) {
  std::lock_guard lock(planner_mutex());
  forward_plan_ = make_plan(grid, FFTW_FORWARD);
  backward_plan_ = make_plan(grid, FFTW_BACKWARD);
}

FourierTransform::~FourierTransform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

void FourierTransform::forward(std::vector<Complex>& data) const {
  if (data.size() != size_) throw InvalidInput("fourier: size mismatch in forward transform");
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(data), as_fftw(data));
}

void FourierTransform::backward(std::vector<Complex>& data) const {
  if (data.size() != size_) throw InvalidInput("fourier: size mismatch in inverse transform");
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), as_fftw(data), as_fftw(data));
}

const FourierTransform& fourier_for(const GridSpec& grid) {
  static std::mutex cache_mutex;
  static std::map<std::pair<int, std::size_t>, std::unique_ptr<FourierTransform>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[{grid.dim(), grid.n()}];
  if (!slot) slot = std::make_unique<FourierTransform>(grid);
  return *slot;
}

SpectralField forward_transform(const ScalarField& field) {
  std::vector<Complex> modes(field.values().begin(), field.values().end());
  fourier_for(field.grid()).forward(modes);
  return {field.grid(), std::move(modes)};
}

ScalarField inverse_transform(const GridSpec& grid, std::vector<Complex> modes) {
  if (modes.size() != grid.size()) {
    throw InvalidInput("inverse_transform: expected " + std::to_string(grid.size()) +
                       " modes, got " + std::to_string(modes.size()));
  }
  fourier_for(grid).backward(modes);
  const double norm = 1.0 / static_cast<double>(grid.size());
  std::vector<double> values(modes.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = modes[i].real() * norm;
  return ScalarField(grid, std::move(values));
}

ScalarField inverse_transform(const SpectralField& spectrum) {
  return inverse_transform(spectrum.grid, spectrum.modes);
}

ScalarField spectral_partial(const SpectralField& spectrum, int order_x, int order_y) {
  const GridSpec& grid = spectrum.grid;
  if (order_x < 0 || order_y < 0) throw InvalidInput("spectral_partial: negative order");
  if (grid.dim() == 1 && order_y != 0) {
    throw InvalidInput("spectral_partial: y-derivative requested on a 1D grid");
  }
  const int total = order_x + order_y;
  std::vector<Complex> modes = spectrum.modes;
  static constexpr std::array<Complex, 4> kPowersOfI = {
      Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(-1.0, 0.0), Complex(0.0, -1.0)};
  const Complex phase = kPowersOfI[static_cast<std::size_t>(total % 4)];
  for (std::size_t m = 0; m < modes.size(); ++m) {
    if (total % 2 == 1 && grid.is_nyquist(m)) {
      modes[m] = 0.0;
      continue;
    }
    const auto k = grid.wavevector(m);
    modes[m] *= phase * std::pow(k[0], order_x) * std::pow(k[1], order_y);
  }
  return inverse_transform(grid, std::move(modes));
}

}  // namespace emberflow
