#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "emberflow/audit.hpp"
#include "emberflow/grid.hpp"
#include "emberflow/trajectory.hpp"

namespace emberflow {

/// Header of trajectory.csv; columns in this order.
inline constexpr const char* kTrajectoryHeader =
    "t,l1_T,l2_T,linf_T,gradsup_T,l1_Y,linf_Y,minY,enthalpy,boundary_frac";

/// One row per sample, 17 significant digits.
void write_trajectory_csv(std::ostream& out, std::span<const TrajectorySample> samples);
void write_trajectory_csv(const std::filesystem::path& path,
                          std::span<const TrajectorySample> samples);

/// Reads a trajectory.csv (header required). l2_Y is NaN in the result.
std::vector<TrajectorySample> read_trajectory_csv(std::istream& in);
std::vector<TrajectorySample> read_trajectory_csv(const std::filesystem::path& path);

enum class FieldTag : std::uint8_t { temperature = 0, fuel = 1 };

/// Binary snapshot layout (little-endian):
///   "EMBR1" | u32 d | u32 n | f64 L | f64 time | u8 tag | n^d f64 values (row-major)
struct SnapshotFile {
  ScalarField field;
  double time = 0.0;
  FieldTag tag = FieldTag::temperature;
};

void write_snapshot(std::ostream& out, const ScalarField& field, double time, FieldTag tag);
void write_snapshot(const std::filesystem::path& path, const ScalarField& field, double time,
                    FieldTag tag);
SnapshotFile read_snapshot(std::istream& in);
SnapshotFile read_snapshot(const std::filesystem::path& path);

void write_reports_csv(const std::filesystem::path& path, std::span<const BoundReport> reports);

/// Tracks files created for one command so they can be removed if it fails.
class OutputSession {
 public:
  explicit OutputSession(std::filesystem::path dir);
  ~OutputSession();
  OutputSession(const OutputSession&) = delete;
  OutputSession& operator=(const OutputSession&) = delete;

  const std::filesystem::path& dir() const noexcept { return dir_; }
  /// Registers `name` inside the output directory and returns its path.
  std::filesystem::path file(const std::string& name);
  /// Keeps the outputs; without this call the destructor deletes them.
  void commit() noexcept { committed_ = true; }

 private:
  std::filesystem::path dir_;
  bool created_dir_ = false;
  bool committed_ = false;
  std::vector<std::filesystem::path> files_;
};

}  // namespace emberflow
