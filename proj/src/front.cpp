#include "emberflow/front.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "emberflow/fit.hpp"

namespace emberflow {

namespace {

constexpr double kDecayedLinf = 1e-4;
constexpr double kMinFitR2 = 0.99;
constexpr std::size_t kMinSnapshots = 10;

}  // namespace

std::optional<double> front_crossing(const ScalarField& temperature, double threshold) {
  const GridSpec& grid = temperature.grid();
  if (grid.dim() != 1) throw InvalidInput("front tracking: only defined for d = 1");
  const auto v = temperature.values();
  for (std::size_t i = v.size() - 1; i-- > 0;) {
    if (v[i] >= threshold && v[i + 1] < threshold) {
      const double frac = (v[i] - threshold) / (v[i] - v[i + 1]);
      return (static_cast<double>(i) + frac) * grid.spacing();
    }
  }
  return std::nullopt;
}

std::optional<double> front_position(const ScalarField& temperature, double level) {
  const double peak = temperature.max();
  if (!(peak > 0.0)) {
    if (temperature.grid().dim() != 1) throw InvalidInput("front tracking: only defined for d = 1");
    return std::nullopt;
  }
  return front_crossing(temperature, level * peak);
}

LevelMode parse_level_mode(std::string_view name) {
  if (name == "relative") return LevelMode::relative;
  if (name == "absolute") return LevelMode::absolute;
  throw InvalidInput("unknown level mode '" + std::string(name) + "' (relative|absolute)");
}

std::string_view level_mode_name(LevelMode mode) noexcept {
  return mode == LevelMode::relative ? "relative" : "absolute";
}

WaveSpeed wave_speed(std::span<const Snapshot> snapshots, FrontLevel level) {
  if (snapshots.size() < kMinSnapshots) {
    throw InvalidInput("wave_speed: need at least 10 snapshots");
  }
  if (level.mode == LevelMode::relative && !(level.value > 0.0 && level.value < 1.0)) {
    throw InvalidInput("wave_speed: relative level must lie in (0, 1)");
  }
  if (!(level.value > 0.0) || !std::isfinite(level.value)) {
    throw InvalidInput("wave_speed: level must be positive");
  }
  double threshold = level.value;
  if (level.mode == LevelMode::relative) {
    double peak = 0.0;
    for (const Snapshot& s : snapshots) peak = std::max(peak, s.temperature.max());
    threshold *= peak;
  }
  WaveSpeed out;
  for (const Snapshot& s : snapshots) {
    const GridSpec& grid = s.temperature.grid();
    const auto x = threshold > 0.0 ? front_crossing(s.temperature, threshold) : std::nullopt;
    if (!x) {
      std::ostringstream os;
      os << "wave_speed: no sustained front (T stays below " << threshold << " at t=" << s.time
         << ")";
      throw FrontError(os.str());
    }
    if (*x > grid.extent() - grid.extent() / 8.0) {
      std::ostringstream os;
      os << "wave_speed: front reached the boundary zone at t=" << s.time;
      throw FrontError(os.str());
    }
    out.times.push_back(s.time);
    out.positions.push_back(*x);
  }
  const LineFit line = fit_line(out.times, out.positions);
  out.speed = line.slope;
  out.r_squared = line.r_squared;
  return out;
}

std::string_view outcome_name(IgnitionOutcome outcome) noexcept {
  switch (outcome) {
    case IgnitionOutcome::decayed: return "decayed";
    case IgnitionOutcome::ignited: return "ignited";
    case IgnitionOutcome::unclassified: return "unclassified";
  }
  return "unknown";
}

namespace {

IgnitionRun run_once(const IgnitionSetup& setup, double amplitude, double horizon) {
  const GridSpec& grid = setup.grid;
  if (grid.dim() != 1) throw InvalidInput("ignition: only d = 1 is supported");
  ScenarioParams tp = setup.temperature;
  tp.amplitude = amplitude;
  const ScalarField t0 = initial_data(grid, Scenario::gaussian, tp);
  const double centre = tp.center ? (*tp.center)[0] : 0.5 * grid.extent();
  const double edge = grid.extent() - grid.extent() / 8.0;
  const auto track = [&setup](const ScalarField& t) {
    return setup.level.mode == LevelMode::relative ? front_position(t, setup.level.value)
                                                   : front_crossing(t, setup.level.value);
  };

  std::vector<Snapshot> captured;
  const double snapshot_every = horizon / static_cast<double>(std::max<std::size_t>(setup.snapshots, 1));
  double next_snapshot = 0.0;
  bool decayed = false;

  RunOptions options;
  options.horizon = horizon;
  options.record_every = setup.record_every;
  bool at_edge = false;
  options.keep_going = [&](const SystemState& state, const TrajectorySample& sample) {
    if (sample.linf_T < kDecayedLinf) {
      decayed = true;
      return false;
    }
    const auto x = track(state.temperature);
    // a state past the edge is contaminated by periodic images; never fit it
    if (x && *x > edge) {
      at_edge = true;
      return false;
    }
    if (sample.time + 1e-9 >= next_snapshot) {
      captured.push_back({state.time, state.temperature, state.fuel});
      next_snapshot += snapshot_every;
    }
    return true;
  };

  const RunResult result =
      run_simulation(SystemState{t0, setup.fuel, 0.0}, setup.params, setup.scheme, options);

  IgnitionRun run;
  run.amplitude = amplitude;
  run.horizon_used = horizon;
  run.end_time = result.final_state.time;
  run.final_linf = result.record.samples().back().linf_T;

  const auto y0 = setup.fuel.values();
  const auto y = result.final_state.fuel.values();
  double min_burnt = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < 0.99 * y0[i] && !(y[i] >= min_burnt)) min_burnt = y[i];
  }
  run.min_burnt_fuel = min_burnt;

  if (decayed) {
    run.outcome = IgnitionOutcome::decayed;
    return run;
  }
  const auto x_end = track(result.final_state.temperature);
  run.front_travel = x_end ? *x_end - centre : 0.0;
  if (run.front_travel < grid.extent() / 4.0) return run;

  std::vector<Snapshot> late;
  for (auto& s : captured) {
    if (s.time >= 0.5 * run.end_time) late.push_back(s);
  }
  if (!at_edge && (late.empty() || late.back().time < run.end_time)) {
    late.push_back({result.final_state.time, result.final_state.temperature,
                    result.final_state.fuel});
  }
  try {
    run.wave = wave_speed(late, setup.level);
  } catch (const std::exception&) {
    return run;
  }
  if (run.wave->r_squared > kMinFitR2) run.outcome = IgnitionOutcome::ignited;
  return run;
}

}  // namespace

IgnitionRun classify_ignition(const IgnitionSetup& setup, double amplitude) {
  IgnitionRun run = run_once(setup, amplitude, setup.horizon);
  if (run.outcome == IgnitionOutcome::unclassified) {
    run = run_once(setup, amplitude, 2.0 * setup.horizon);
  }
  return run;
}

IgnitionBracket ignition_threshold(const IgnitionSetup& setup, double low, double high,
                                   double max_ratio, int run_budget) {
  if (!(low >= 0.0 && high > low)) throw InvalidInput("ignition: need 0 <= low < high");
  if (!(max_ratio > 1.0)) throw InvalidInput("ignition: max_ratio must exceed 1");
  IgnitionBracket bracket;
  auto classify = [&](double a) {
    if (static_cast<int>(bracket.history.size()) >= run_budget) {
      throw std::runtime_error("ignition: run budget exhausted");
    }
    IgnitionRun run = classify_ignition(setup, a);
    bracket.history.push_back(run);
    if (run.outcome == IgnitionOutcome::unclassified) {
      std::ostringstream os;
      os << "ignition: amplitude " << a << " neither decayed nor formed a front (travel "
         << run.front_travel << ", max T " << run.final_linf << " at t=" << run.end_time << ")";
      throw std::runtime_error(os.str());
    }
    return run;
  };

  bracket.low_run = classify(low);
  if (bracket.low_run.outcome != IgnitionOutcome::decayed) {
    throw InvalidInput("ignition: lower amplitude of the bracket does not decay");
  }
  bracket.high_run = classify(high);
  if (bracket.high_run.outcome != IgnitionOutcome::ignited) {
    throw InvalidInput("ignition: upper amplitude of the bracket does not ignite");
  }
  bracket.low = low;
  bracket.high = high;
  while (bracket.high > max_ratio * bracket.low) {
    const double mid = bracket.low > 0.0 ? std::sqrt(bracket.low * bracket.high)
                                         : 0.5 * (bracket.low + bracket.high);
    IgnitionRun run = classify(mid);
    if (run.outcome == IgnitionOutcome::decayed) {
      bracket.low = mid;
      bracket.low_run = std::move(run);
    } else {
      bracket.high = mid;
      bracket.high_run = std::move(run);
    }
  }
  return bracket;
}

}  // namespace emberflow
