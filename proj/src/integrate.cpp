#include "emberflow/integrate.hpp"

#include <cmath>
#include <string>

#include "emberflow/fourier.hpp"

namespace emberflow {

SchemeKind parse_scheme(std::string_view name) {
  if (name == "etd1" || name == "ETD1") return SchemeKind::etd1;
  if (name == "etd2" || name == "ETD2") return SchemeKind::etd2;
  throw InvalidInput("unknown step scheme '" + std::string(name) + "' (use etd1 or etd2)");
}

std::string_view scheme_name(SchemeKind kind) noexcept {
  return kind == SchemeKind::etd1 ? "etd1" : "etd2";
}

namespace {

void check_compatible(const SystemState& state, const ModelParams& params,
                      const HeatPropagator& propagator) {
  if (!(state.temperature.grid() == propagator.grid()) ||
      !(state.fuel.grid() == propagator.grid())) {
    throw InvalidInput("step: state grid does not match the propagator grid");
  }
  if (params.lambda != propagator.lambda()) {
    throw InvalidInput("step: propagator was built for a different lambda");
  }
}

std::vector<Complex> to_modes(std::span<const double> values, const FourierTransform& fft) {
  std::vector<Complex> modes(values.begin(), values.end());
  fft.forward(modes);
  return modes;
}

std::vector<double> pointwise_rate(const ScalarField& T) {
  std::vector<double> r(T.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = arrhenius_rate(T[i]);
  return r;
}

std::vector<double> forcing(std::span<const double> fuel, std::span<const double> rate) {
  std::vector<double> f(fuel.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = fuel[i] * rate[i];
  return f;
}

// Y exp(-weight * rate); the exponent is nonnegative so Y+ <= Y exactly.
std::vector<double> burn_fuel(std::span<const double> fuel, std::span<const double> rate,
                              double weight) {
  std::vector<double> y(fuel.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = fuel[i] * std::exp(-weight * rate[i]);
  return y;
}

}  // namespace

SystemState step_etd1(const SystemState& state, const ModelParams& params,
                      const HeatPropagator& propagator) {
  check_compatible(state, params, propagator);
  const GridSpec& grid = propagator.grid();
  const FourierTransform& fft = fourier_for(grid);
  const double dt = propagator.dt();

  const std::vector<double> rate = pointwise_rate(state.temperature);
  std::vector<Complex> t_hat = to_modes(state.temperature.values(), fft);
  const std::vector<Complex> f_hat = to_modes(forcing(state.fuel.values(), rate), fft);

  const auto E = propagator.decay_multipliers();
  const auto phi1 = propagator.duhamel_multipliers();
  for (std::size_t m = 0; m < t_hat.size(); ++m) t_hat[m] = E[m] * t_hat[m] + phi1[m] * f_hat[m];

  return SystemState{inverse_transform(grid, std::move(t_hat)),
                     ScalarField(grid, burn_fuel(state.fuel.values(), rate, params.beta * dt)),
                     state.time + dt};
}

SystemState step_etd2(const SystemState& state, const ModelParams& params,
                      const HeatPropagator& propagator) {
  check_compatible(state, params, propagator);
  const GridSpec& grid = propagator.grid();
  const FourierTransform& fft = fourier_for(grid);
  const double dt = propagator.dt();

  const std::vector<double> rate = pointwise_rate(state.temperature);
  const std::vector<Complex> t_hat = to_modes(state.temperature.values(), fft);
  const std::vector<Complex> f_hat = to_modes(forcing(state.fuel.values(), rate), fft);

  const auto E = propagator.decay_multipliers();
  const auto phi1 = propagator.duhamel_multipliers();
  const auto phi2 = propagator.corrector_multipliers();

  std::vector<Complex> predicted_hat(t_hat.size());
  for (std::size_t m = 0; m < t_hat.size(); ++m) {
    predicted_hat[m] = E[m] * t_hat[m] + phi1[m] * f_hat[m];
  }
  const ScalarField t_pred = inverse_transform(grid, predicted_hat);
  const std::vector<double> y_pred = burn_fuel(state.fuel.values(), rate, params.beta * dt);
  const std::vector<double> rate_pred = pointwise_rate(t_pred);
  const std::vector<Complex> f_pred_hat = to_modes(forcing(y_pred, rate_pred), fft);

  for (std::size_t m = 0; m < t_hat.size(); ++m) {
    predicted_hat[m] += phi2[m] * (f_pred_hat[m] - f_hat[m]);
  }

  std::vector<double> mean_rate(rate.size());
  for (std::size_t i = 0; i < rate.size(); ++i) mean_rate[i] = 0.5 * (rate[i] + rate_pred[i]);

  return SystemState{inverse_transform(grid, std::move(predicted_hat)),
                     ScalarField(grid, burn_fuel(state.fuel.values(), mean_rate, params.beta * dt)),
                     state.time + dt};
}

SystemState step(const SystemState& state, const ModelParams& params,
                 const HeatPropagator& propagator, SchemeKind kind) {
  return kind == SchemeKind::etd1 ? step_etd1(state, params, propagator)
                                  : step_etd2(state, params, propagator);
}

std::size_t step_count(double horizon, double dt) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("run: horizon must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("run: dt must be > 0");
  const double ratio = horizon / dt;
  const double whole = std::round(ratio);
  if (whole < 1.0 || std::abs(ratio - whole) > 1e-9 * ratio) {
    throw InvalidInput("run: horizon must be a whole number of steps of size dt");
  }
  return static_cast<std::size_t>(whole);
}

RunResult run_simulation(const SystemState& initial, const ModelParams& params,
                         const StepScheme& scheme, const RunOptions& options) {
  params.validate();
  initial.validate();
  if (options.record_every == 0) throw InvalidInput("run: record_every must be >= 1");
  const std::size_t steps = step_count(options.horizon, scheme.dt);
  const GridSpec& grid = initial.temperature.grid();
  const HeatPropagator propagator(grid, params.lambda, scheme.dt);

  std::vector<std::size_t> snapshot_steps;
  for (double ts : options.snapshot_times) {
    if (!(ts >= 0.0) || ts > options.horizon * (1.0 + 1e-12)) {
      throw InvalidInput("run: snapshot time outside [0, horizon]");
    }
    snapshot_steps.push_back(static_cast<std::size_t>(std::llround(ts / scheme.dt)));
  }

  RunResult result{TrajectoryRecord(grid, params, scheme.dt, std::string(scheme_name(scheme.kind))),
                   initial, false};
  SystemState state = initial;
  const double t0 = initial.time;

  auto take_snapshots = [&](std::size_t n) {
    for (std::size_t s : snapshot_steps) {
      if (s == n) result.record.add_snapshot({state.time, state.temperature, state.fuel});
    }
  };

  take_snapshots(0);
  {
    const TrajectorySample sample = measure(state, params);
    result.record.append(sample);
    if (options.keep_going && !options.keep_going(state, sample)) {
      result.final_state = state;
      result.stopped_early = true;
      return result;
    }
  }

  for (std::size_t n = 1; n <= steps; ++n) {
    state = step(state, params, propagator, scheme.kind);
    // Times are n * dt from the start, not accumulated sums.
    state.time = t0 + static_cast<double>(n) * scheme.dt;
    take_snapshots(n);
    if (n % options.record_every == 0 || n == steps) {
      const TrajectorySample sample = measure(state, params);
      result.record.append(sample);
      if (options.keep_going && !options.keep_going(state, sample)) {
        result.stopped_early = n < steps;
        break;
      }
    }
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace emberflow
