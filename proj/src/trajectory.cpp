#include "emberflow/trajectory.hpp"

#include <cmath>

#include "emberflow/norms.hpp"

namespace emberflow {

TrajectorySample measure(const SystemState& state, const ModelParams& params) {
  const ScalarField& T = state.temperature;
  const ScalarField& Y = state.fuel;
  TrajectorySample s;
  s.time = state.time;
  s.l1_T = lp_norm(T, Lp::one);
  s.l2_T = lp_norm(T, Lp::two);
  s.linf_T = lp_norm(T, Lp::infinity);
  s.gradsup_T = grad_sup(T);
  s.l1_Y = lp_norm(Y, Lp::one);
  s.l2_Y = lp_norm(Y, Lp::two);
  s.linf_Y = lp_norm(Y, Lp::infinity);
  s.min_Y = Y.min();
  s.enthalpy = integral(T);
  if (params.beta > 0.0) s.enthalpy += integral(Y) / params.beta;
  s.boundary_frac = boundary_fraction(T);
  return s;
}

TrajectoryRecord::TrajectoryRecord(GridSpec grid, ModelParams params, double dt, std::string scheme)
    : grid_(grid), params_(params), dt_(dt), scheme_(std::move(scheme)) {}

void TrajectoryRecord::append(const TrajectorySample& sample) {
  if (!samples_.empty() && !(sample.time > samples_.back().time)) {
    throw InvalidInput("trajectory: sample times must be strictly increasing");
  }
  for (double v : {sample.time, sample.l1_T, sample.l2_T, sample.linf_T, sample.gradsup_T,
                   sample.l1_Y, sample.linf_Y, sample.min_Y, sample.enthalpy,
                   sample.boundary_frac}) {
    if (!std::isfinite(v)) {
      throw NumericalDefect("trajectory: non-finite norm recorded at t=" +
                            std::to_string(sample.time));
    }
  }
  if (contamination_time_ < 0.0 && sample.boundary_frac > kBoundaryContaminationThreshold) {
    contamination_time_ = sample.time;
  }
  samples_.push_back(sample);
}

void TrajectoryRecord::add_snapshot(Snapshot snapshot) {
  if (!(snapshot.temperature.grid() == grid_) || !(snapshot.fuel.grid() == grid_)) {
    throw InvalidInput("trajectory: snapshot grid differs from the run grid");
  }
  snapshots_.push_back(std::move(snapshot));
}

}  // namespace emberflow
