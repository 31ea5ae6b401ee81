#pragma once

#include <limits>
#include <string>
#include <vector>

#include "emberflow/grid.hpp"
#include "emberflow/reaction.hpp"

namespace emberflow {

/// Norms and conserved quantities of one state. Column order matches
/// trajectory.csv.
struct TrajectorySample {
  double time = 0.0;
  double l1_T = 0.0;
  double l2_T = 0.0;
  double linf_T = 0.0;
  double gradsup_T = 0.0;
  double l1_Y = 0.0;
  double linf_Y = 0.0;
  double min_Y = 0.0;
  /// integral of T + Y / beta; integral of T alone when beta = 0.
  double enthalpy = 0.0;
  double boundary_frac = 0.0;
  /// Not part of the CSV layout; NaN when read back from CSV.
  double l2_Y = std::numeric_limits<double>::quiet_NaN();
};

TrajectorySample measure(const SystemState& state, const ModelParams& params);

struct Snapshot {
  double time;
  ScalarField temperature;
  ScalarField fuel;
};

/// Time series produced by a run. Times are strictly increasing and all
/// recorded values finite.
class TrajectoryRecord {
 public:
  TrajectoryRecord(GridSpec grid, ModelParams params, double dt, std::string scheme);

  const GridSpec& grid() const noexcept { return grid_; }
  const ModelParams& params() const noexcept { return params_; }
  /// Step size (node spacing for Picard runs); drives discretization slack in audits.
  double dt() const noexcept { return dt_; }
  const std::string& scheme() const noexcept { return scheme_; }

  const std::vector<TrajectorySample>& samples() const noexcept { return samples_; }
  const std::vector<Snapshot>& snapshots() const noexcept { return snapshots_; }

  void append(const TrajectorySample& sample);
  void add_snapshot(Snapshot snapshot);

  /// First sample crossed kBoundaryContaminationThreshold, if any.
  bool boundary_contaminated() const noexcept { return contamination_time_ >= 0.0; }
  double contamination_time() const noexcept { return contamination_time_; }

 private:
  GridSpec grid_;
  ModelParams params_;
  double dt_;
  std::string scheme_;
  std::vector<TrajectorySample> samples_;
  std::vector<Snapshot> snapshots_;
  double contamination_time_ = -1.0;
};

}  // namespace emberflow
