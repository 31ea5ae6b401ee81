#include "emberflow/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "emberflow/fourier.hpp"
#include "emberflow/semigroup.hpp"

namespace emberflow {

void PicardConfig::validate() const {
  if (!(slab_length > 0.0) || !std::isfinite(slab_length)) {
    throw InvalidInput("picard: slab_length must be positive");
  }
  if (nodes < 2) throw InvalidInput("picard: need at least 2 nodes per slab");
  if (!(tol > 0.0)) throw InvalidInput("picard: tol must be positive");
  if (max_iter < 1) throw InvalidInput("picard: max_iter must be >= 1");
}

namespace {

constexpr int kMaxHalvings = 10;
constexpr int kNonContractionStreak = 3;

struct SlabOutcome {
  bool contracting = true;
  std::vector<double> temperature;
  std::vector<double> fuel;
  SlabReport report;
};

std::vector<double> real_inverse(std::vector<Complex> modes, const FourierTransform& fft) {
  fft.backward(modes);
  const double norm = 1.0 / static_cast<double>(modes.size());
  std::vector<double> out(modes.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = modes[i].real() * norm;
  return out;
}

SlabOutcome solve_slab(const GridSpec& grid, const std::vector<double>& t_start,
                       const std::vector<double>& y_start, double slab_start, double length,
                       const ModelParams& params, const PicardConfig& config) {
  const FourierTransform& fft = fourier_for(grid);
  const std::size_t M = config.nodes;
  const std::size_t N = grid.size();
  const double spacing = length / static_cast<double>(M - 1);
  const HeatPropagator sub_step(grid, params.lambda, spacing);
  const auto E = sub_step.decay_multipliers();
  const auto phi1 = sub_step.duhamel_multipliers();
  const auto phi2 = sub_step.corrector_multipliers();
  const std::vector<double> k2 = grid.squared_wavenumbers();

  std::vector<Complex> start_hat(t_start.begin(), t_start.end());
  fft.forward(start_hat);

  // Linear part P(t_m - t0) T(t0) at every node, in spectral space.
  std::vector<std::vector<Complex>> free_hat(M, start_hat);
  for (std::size_t m = 1; m < M; ++m) {
    const double s = static_cast<double>(m) * spacing;
    for (std::size_t k = 0; k < N; ++k) free_hat[m][k] *= std::exp(-(k2[k] + params.lambda) * s);
  }

  std::vector<std::vector<double>> T(M), Y(M, y_start);
  T[0] = t_start;
  for (std::size_t m = 1; m < M; ++m) T[m] = real_inverse(free_hat[m], fft);

  SlabOutcome out;
  out.report.start = slab_start;
  out.report.length = length;
  double previous = 0.0;
  int streak = 0;
  std::vector<std::vector<double>> rate(M, std::vector<double>(N));
  std::vector<std::vector<Complex>> forcing_hat(M, std::vector<Complex>(N));

  for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
    for (std::size_t m = 0; m < M; ++m) {
      for (std::size_t i = 0; i < N; ++i) {
        rate[m][i] = arrhenius_rate(T[m][i]);
        forcing_hat[m][i] = Y[m][i] * rate[m][i];
      }
      fft.forward(forcing_hat[m]);
    }

    double change = 0.0;
    std::vector<Complex> duhamel(N, Complex(0.0, 0.0));
    std::vector<double> burned(N, 0.0);
    for (std::size_t m = 1; m < M; ++m) {
      for (std::size_t k = 0; k < N; ++k) {
        duhamel[k] = E[k] * duhamel[k] + (phi1[k] - phi2[k]) * forcing_hat[m - 1][k] +
                     phi2[k] * forcing_hat[m][k];
      }
      std::vector<Complex> total(N);
      for (std::size_t k = 0; k < N; ++k) total[k] = free_hat[m][k] + duhamel[k];
      std::vector<double> t_next = real_inverse(std::move(total), fft);
      std::vector<double> y_next(N);
      for (std::size_t i = 0; i < N; ++i) {
        burned[i] += 0.5 * spacing * (rate[m - 1][i] + rate[m][i]);
        y_next[i] = y_start[i] * std::exp(-params.beta * burned[i]);
        change = std::max({change, std::abs(t_next[i] - T[m][i]), std::abs(y_next[i] - Y[m][i])});
      }
      T[m] = std::move(t_next);
      Y[m] = std::move(y_next);
    }
    if (!std::isfinite(change)) {
      out.contracting = false;
      return out;
    }

    out.report.iterations = iter;
    if (previous > 0.0) {
      const double ratio = change / previous;
      out.report.contraction = std::max(out.report.contraction, ratio);
      streak = ratio >= 1.0 ? streak + 1 : 0;
    }
    if (change < config.tol) {
      out.temperature = std::move(T[M - 1]);
      out.fuel = std::move(Y[M - 1]);
      return out;
    }
    if (streak >= kNonContractionStreak) {
      out.contracting = false;
      return out;
    }
    previous = change;
  }
  std::ostringstream os;
  os << "picard: no convergence within " << config.max_iter << " iterations on slab ["
     << slab_start << ", " << slab_start + length << "]";
  throw PicardFailure(os.str());
}

}  // namespace

PicardResult picard_solve(const SystemState& initial, const ModelParams& params,
                          const PicardConfig& config, double horizon) {
  params.validate();
  config.validate();
  initial.validate();
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("picard: horizon must be > 0");
  const double slabs_exact = horizon / config.slab_length;
  const double slabs = std::round(slabs_exact);
  if (slabs < 1.0 || std::abs(slabs_exact - slabs) > 1e-9 * slabs_exact) {
    throw InvalidInput("picard: horizon must be a multiple of slab_length");
  }

  const GridSpec& grid = initial.temperature.grid();
  double length = config.slab_length;
  const double spacing = length / static_cast<double>(config.nodes - 1);
  PicardResult result{TrajectoryRecord(grid, params, spacing, "picard"), initial, {}, 0};
  result.record.append(measure(initial, params));

  std::vector<double> T(initial.temperature.values().begin(), initial.temperature.values().end());
  std::vector<double> Y(initial.fuel.values().begin(), initial.fuel.values().end());
  const double t0 = initial.time;
  // Slabs are counted in units of the current length so node times stay exact.
  double done = 0.0;
  while (horizon - done > 1e-12 * horizon) {
    SlabOutcome slab = solve_slab(grid, T, Y, t0 + done, length, params, config);
    if (!slab.contracting) {
      if (result.halvings >= kMaxHalvings) {
        std::ostringstream os;
        os << "picard: map not contracting at t=" << t0 + done << " even with slab length "
           << length;
        throw PicardFailure(os.str());
      }
      length *= 0.5;
      ++result.halvings;
      continue;
    }
    done += length;
    T = std::move(slab.temperature);
    Y = std::move(slab.fuel);
    result.slabs.push_back(slab.report);
    SystemState state{ScalarField(grid, T), ScalarField(grid, Y), t0 + done};
    result.record.append(measure(state, params));
    result.final_state = std::move(state);
  }
  return result;
}

}  // namespace emberflow
