#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "emberflow/grid.hpp"
#include "emberflow/reaction.hpp"
#include "emberflow/semigroup.hpp"
#include "emberflow/trajectory.hpp"

namespace emberflow {

enum class SchemeKind { etd1, etd2 };

SchemeKind parse_scheme(std::string_view name);
std::string_view scheme_name(SchemeKind kind) noexcept;

struct StepScheme {
  SchemeKind kind = SchemeKind::etd2;
  double dt = 0.01;
};

/**
 * First-order exponential step: the forcing F = Y r(T) is frozen at the step
 * start and integrated exactly against the damped heat flow,
 *
 *   T+ = E T + phi1 F            (per Fourier mode)
 *   Y+ = Y exp(-beta dt r(T))
 *
 * The fuel update is exact for frozen T, so Y+ <= Y and Y+ >= 0 hold exactly.
 */
SystemState step_etd1(const SystemState& state, const ModelParams& params,
                      const HeatPropagator& propagator);

/**
 * Second-order exponential predictor-corrector. The predictor is the ETD1
 * state; the corrector adds phi2 (F_pred - F) per mode, i.e. the forcing is
 * linearly interpolated across the step. Fuel uses the trapezoidal exponent
 * -beta dt (r(T) + r(T_pred)) / 2.
 */
SystemState step_etd2(const SystemState& state, const ModelParams& params,
                      const HeatPropagator& propagator);

SystemState step(const SystemState& state, const ModelParams& params,
                 const HeatPropagator& propagator, SchemeKind kind);

struct RunOptions {
  double horizon = 1.0;
  /// Record a TrajectorySample every this many steps (plus t = 0 and the final step).
  std::size_t record_every = 1;
  /// Snapshots are taken at the step nearest each requested time.
  std::vector<double> snapshot_times;
  /// Called after every recorded sample; returning false stops the run early.
  std::function<bool(const SystemState&, const TrajectorySample&)> keep_going;
};

struct RunResult {
  TrajectoryRecord record;
  SystemState final_state;
  bool stopped_early = false;
};

/// Steps from `initial` to initial.time + horizon. horizon / dt must be an
/// integer (to 1e-9 relative). Throws NumericalDefect on non-finite fields.
RunResult run_simulation(const SystemState& initial, const ModelParams& params,
                         const StepScheme& scheme, const RunOptions& options);

/// Number of whole steps of size dt in horizon; throws unless horizon is a
/// multiple of dt to 1e-9 relative.
std::size_t step_count(double horizon, double dt);

}  // namespace emberflow
