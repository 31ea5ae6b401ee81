#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "emberflow/audit.hpp"
#include "emberflow/front.hpp"
#include "emberflow/grid.hpp"
#include "emberflow/picard.hpp"
#include "emberflow/reaction.hpp"
#include "emberflow/scenarios.hpp"

namespace emberflow {

/// Parse or validation failure in a config file; the message names the line and key.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

enum class SolverKind { etd1, etd2, picard };

std::string_view solver_name(SolverKind kind) noexcept;

struct InitialSpec {
  Scenario scenario = Scenario::zero;
  ScenarioParams params;

  bool operator==(const InitialSpec&) const = default;
};

/**
 * Everything a run needs. Text form (see parse_config):
 *
 *   # comment
 *   [grid]         dim, n, extent
 *   [model]        lambda, beta
 *   [scheme]       kind (etd1|etd2|picard), dt, slab_length, nodes, tol, max_iter
 *   [run]          horizon, record_every, snapshot_times (comma list), seed
 *   [temperature]  scenario, amplitude, sigma, half_width, edge_width, radius, center
 *   [fuel]         same keys as [temperature]
 *   [audit]        bounds (comma list), eps0, level, level_mode (relative|absolute)
 *   [ignite]       low, high, ratio, snapshots
 *   [output]       dir
 */
struct RunConfig {
  int dim = 1;
  std::size_t n = 1024;
  double extent = 100.0;

  ModelParams params;

  SolverKind solver = SolverKind::etd2;
  double dt = 0.01;
  PicardConfig picard;

  double horizon = 1.0;
  std::size_t record_every = 1;
  std::vector<double> snapshot_times;
  std::uint64_t seed = 0;

  InitialSpec temperature{Scenario::gaussian, {}};
  InitialSpec fuel{Scenario::uniform, {}};

  std::vector<BoundId> audits;
  double eps0 = 0.01;
  FrontLevel front_level;

  double ignite_low = 0.1;
  double ignite_high = 5.0;
  double ignite_ratio = 1.02;
  std::size_t ignite_snapshots = 100;

  std::string output_dir = "out";

  GridSpec grid() const { return GridSpec::make(dim, n, extent); }

  /// Cross-field checks; throws ConfigError.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses `key = value` lines grouped under `[section]` headers. Unknown
/// sections or keys, malformed numbers and constraint violations are rejected
/// with the line number and key in the message.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text of every effective setting; parse_config of it returns an
/// equal RunConfig.
std::string to_config_text(const RunConfig& config);

}  // namespace emberflow
