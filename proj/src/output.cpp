#include "emberflow/output.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace emberflow {

namespace {

constexpr std::array<char, 5> kMagic = {'E', 'M', 'B', 'R', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
    throw InvalidInput("snapshot: truncated file");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw InvalidInput("cannot read " + path.string());
  return in;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, std::span<const TrajectorySample> samples) {
  out << kTrajectoryHeader << '\n';
  out << std::setprecision(17);
  for (const auto& s : samples) {
    out << s.time << ',' << s.l1_T << ',' << s.l2_T << ',' << s.linf_T << ',' << s.gradsup_T << ','
        << s.l1_Y << ',' << s.linf_Y << ',' << s.min_Y << ',' << s.enthalpy << ','
        << s.boundary_frac << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path,
                          std::span<const TrajectorySample> samples) {
  auto out = open_out(path);
  write_trajectory_csv(out, samples);
}

std::vector<TrajectorySample> read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader) {
    throw InvalidInput("trajectory csv: missing or unexpected header");
  }
  std::vector<TrajectorySample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<double, 10> v{};
    std::istringstream row(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(row, cell, ',')) {
      if (k >= v.size()) break;
      try {
        std::size_t used = 0;
        v[k] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw InvalidInput("trajectory csv: bad number on line " + std::to_string(line_no));
      }
      ++k;
    }
    if (k != v.size()) {
      throw InvalidInput("trajectory csv: expected 10 columns on line " + std::to_string(line_no));
    }
    TrajectorySample s;
    s.time = v[0];
    s.l1_T = v[1];
    s.l2_T = v[2];
    s.linf_T = v[3];
    s.gradsup_T = v[4];
    s.l1_Y = v[5];
    s.linf_Y = v[6];
    s.min_Y = v[7];
    s.enthalpy = v[8];
    s.boundary_frac = v[9];
    samples.push_back(s);
  }
  return samples;
}

std::vector<TrajectorySample> read_trajectory_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_trajectory_csv(in);
}

void write_snapshot(std::ostream& out, const ScalarField& field, double time, FieldTag tag) {
  const GridSpec& grid = field.grid();
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.dim()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.n()));
  put_le<double>(out, grid.extent());
  put_le<double>(out, time);
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(tag));
  for (double v : field.values()) put_le<double>(out, v);
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& field, double time,
                    FieldTag tag) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  write_snapshot(out, field, time, tag);
}

SnapshotFile read_snapshot(std::istream& in) {
  std::array<char, 5> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw InvalidInput("snapshot: bad magic bytes");
  }
  const auto dim = get_le<std::uint32_t>(in);
  const auto n = get_le<std::uint32_t>(in);
  const auto extent = get_le<double>(in);
  const auto time = get_le<double>(in);
  const auto tag = get_le<std::uint8_t>(in);
  if (tag > 1) throw InvalidInput("snapshot: unknown field tag " + std::to_string(tag));
  const GridSpec grid = GridSpec::make(static_cast<int>(dim), n, extent);
  std::vector<double> values(grid.size());
  for (double& v : values) v = get_le<double>(in);
  return {ScalarField(grid, std::move(values)), time, static_cast<FieldTag>(tag)};
}

SnapshotFile read_snapshot(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in | std::ios::binary);
  return read_snapshot(in);
}

void write_reports_csv(const std::filesystem::path& path, std::span<const BoundReport> reports) {
  auto out = open_out(path);
  out << BoundReport::csv_header() << '\n';
  for (const auto& r : reports) out << r.csv_row() << '\n';
}

OutputSession::OutputSession(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!std::filesystem::exists(dir_)) {
    std::filesystem::create_directories(dir_);
    created_dir_ = true;
  }
}

OutputSession::~OutputSession() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& f : files_) std::filesystem::remove(f, ec);
  if (created_dir_) std::filesystem::remove_all(dir_, ec);
}

std::filesystem::path OutputSession::file(const std::string& name) {
  auto path = dir_ / name;
  files_.push_back(path);
  return path;
}

}  // namespace emberflow
