#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "emberflow/integrate.hpp"
#include "emberflow/scenarios.hpp"
#include "emberflow/trajectory.hpp"

namespace emberflow {

/// Raised when no travelling front can be measured.
class FrontError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rightmost downward crossing of T = threshold, interpolated linearly between
/// nodes. d = 1 only. Empty when no crossing exists.
std::optional<double> front_crossing(const ScalarField& temperature, double threshold);

/// front_crossing at level * max(T) of this field.
std::optional<double> front_position(const ScalarField& temperature, double level = 0.5);

/// Tracking level: a fraction of the peak temperature over all snapshots
/// (relative), or a fixed temperature (absolute).
enum class LevelMode { relative, absolute };

struct FrontLevel {
  double value = 0.5;
  LevelMode mode = LevelMode::relative;

  bool operator==(const FrontLevel&) const = default;
};

LevelMode parse_level_mode(std::string_view name);
std::string_view level_mode_name(LevelMode mode) noexcept;

struct WaveSpeed {
  double speed = 0.0;
  double r_squared = 0.0;
  std::vector<double> times;
  std::vector<double> positions;
};

/**
 * Least-squares front speed from >= 10 snapshots (d = 1). Throws FrontError
 * when some snapshot stays below the tracking level ("no sustained front") or
 * when a front lies within L/8 of the box edge (periodic images would
 * contaminate it).
 */
WaveSpeed wave_speed(std::span<const Snapshot> snapshots, FrontLevel level = {});

/// Everything needed to rerun the ignition experiment at a given amplitude of
/// the Gaussian initial temperature.
struct IgnitionSetup {
  GridSpec grid;
  ModelParams params;
  ScenarioParams temperature;  // gaussian; amplitude is overwritten per run
  ScalarField fuel;
  StepScheme scheme;
  double horizon = 200.0;
  std::size_t record_every = 10;
  /// Snapshots evenly spaced over the horizon. Runs stop early at the box
  /// edge, so this must leave >= 10 in the second half of the run.
  std::size_t snapshots = 40;
  FrontLevel level;
};

enum class IgnitionOutcome { decayed, ignited, unclassified };

struct IgnitionRun {
  double amplitude = 0.0;
  IgnitionOutcome outcome = IgnitionOutcome::unclassified;
  /// When the run stopped (decay detected, front near the edge, or horizon).
  double end_time = 0.0;
  double final_linf = 0.0;
  /// Speed fit over snapshots in the second half of the run (ignited runs).
  std::optional<WaveSpeed> wave;
  /// Front displacement from the initial centre at the end of the run.
  double front_travel = 0.0;
  /// min of Y over nodes that lost at least 1% of their fuel; NaN if none did.
  double min_burnt_fuel = 0.0;
  double horizon_used = 0.0;
};

/// Decayed: ||T||_inf < 1e-4 before the horizon. Ignited: the front travels
/// >= L/4 from the centre and the speed fit over the second half of the run has
/// R^2 > 0.99. Runs stop early once the front is within L/8 of the edge. An
/// unclassifiable run is retried once with twice the horizon.
IgnitionRun classify_ignition(const IgnitionSetup& setup, double amplitude);

struct IgnitionBracket {
  double low = 0.0;
  double high = 0.0;
  IgnitionRun low_run;
  IgnitionRun high_run;
  std::vector<IgnitionRun> history;
};

/// Geometric bisection on the amplitude until high / low <= max_ratio.
/// Throws InvalidInput unless `low` decays and `high` ignites, and
/// std::runtime_error if the run budget is exhausted or a run stays
/// unclassified.
IgnitionBracket ignition_threshold(const IgnitionSetup& setup, double low, double high,
                                   double max_ratio = 1.02, int run_budget = 40);

std::string_view outcome_name(IgnitionOutcome outcome) noexcept;

}  // namespace emberflow
