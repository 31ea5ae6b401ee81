#include "emberflow/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "emberflow/integrate.hpp"

namespace emberflow {

std::string_view solver_name(SolverKind kind) noexcept {
  switch (kind) {
    case SolverKind::etd1: return "etd1";
    case SolverKind::etd2: return "etd2";
    case SolverKind::picard: return "picard";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("expected a finite number, got '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t to_unsigned(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("expected a nonnegative integer, got '" + std::string(s) + "'");
  }
  return v;
}

double nonnegative(std::string_view s) {
  const double v = to_double(s);
  if (v < 0.0) throw ConfigError("must be >= 0");
  return v;
}

double positive(std::string_view s) {
  const double v = to_double(s);
  if (!(v > 0.0)) throw ConfigError("must be > 0");
  return v;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;
using SectionTable = std::map<std::string, Setter, std::less<>>;

SectionTable initial_keys(InitialSpec RunConfig::*member) {
  return {
      {"scenario", [member](RunConfig& c, std::string_view v) {
         (c.*member).scenario = parse_scenario(v);
       }},
      {"amplitude", [member](RunConfig& c, std::string_view v) {
         (c.*member).params.amplitude = nonnegative(v);
       }},
      {"sigma", [member](RunConfig& c, std::string_view v) {
         (c.*member).params.sigma = positive(v);
       }},
      {"half_width", [member](RunConfig& c, std::string_view v) {
         (c.*member).params.half_width = positive(v);
       }},
      {"edge_width", [member](RunConfig& c, std::string_view v) {
         (c.*member).params.edge_width = positive(v);
       }},
      {"radius", [member](RunConfig& c, std::string_view v) {
         (c.*member).params.radius = positive(v);
       }},
      {"center", [member](RunConfig& c, std::string_view v) {
         const auto items = split_list(v);
         if (items.empty() || items.size() > 2) throw ConfigError("expected 1 or 2 coordinates");
         Position p{to_double(items[0]), items.size() == 2 ? to_double(items[1]) : 0.0};
         (c.*member).params.center = p;
       }},
  };
}

const std::map<std::string, SectionTable, std::less<>>& schema() {
  static const std::map<std::string, SectionTable, std::less<>> table = {
      {"grid",
       {
           {"dim", [](RunConfig& c, std::string_view v) {
              const auto d = to_unsigned(v);
              if (d != 1 && d != 2) throw ConfigError("dimension must be 1 or 2");
              c.dim = static_cast<int>(d);
            }},
           {"n", [](RunConfig& c, std::string_view v) {
              const auto n = to_unsigned(v);
              if (n < 8 || (n & (n - 1)) != 0) {
                throw ConfigError("points per axis must be a power of two >= 8");
              }
              c.n = n;
            }},
           {"extent", [](RunConfig& c, std::string_view v) { c.extent = positive(v); }},
       }},
      {"model",
       {
           {"lambda", [](RunConfig& c, std::string_view v) {
              const double x = to_double(v);
              if (x < 0.0) throw ConfigError("heat-loss rate lambda must be >= 0");
              c.params.lambda = x;
            }},
           {"beta", [](RunConfig& c, std::string_view v) {
              const double x = to_double(v);
              if (x < 0.0) throw ConfigError("fuel consumption ratio beta must be >= 0");
              c.params.beta = x;
            }},
       }},
      {"scheme",
       {
           {"kind", [](RunConfig& c, std::string_view v) {
              if (v == "etd1") c.solver = SolverKind::etd1;
              else if (v == "etd2") c.solver = SolverKind::etd2;
              else if (v == "picard") c.solver = SolverKind::picard;
              else throw ConfigError("expected etd1, etd2 or picard");
            }},
           {"dt", [](RunConfig& c, std::string_view v) { c.dt = positive(v); }},
           {"slab_length",
            [](RunConfig& c, std::string_view v) { c.picard.slab_length = positive(v); }},
           {"nodes", [](RunConfig& c, std::string_view v) {
              const auto m = to_unsigned(v);
              if (m < 2) throw ConfigError("need at least 2 nodes per slab");
              c.picard.nodes = m;
            }},
           {"tol", [](RunConfig& c, std::string_view v) { c.picard.tol = positive(v); }},
           {"max_iter", [](RunConfig& c, std::string_view v) {
              const auto m = to_unsigned(v);
              if (m < 1) throw ConfigError("must be >= 1");
              c.picard.max_iter = m;
            }},
       }},
      {"run",
       {
           {"horizon", [](RunConfig& c, std::string_view v) { c.horizon = positive(v); }},
           {"record_every", [](RunConfig& c, std::string_view v) {
              const auto k = to_unsigned(v);
              if (k < 1) throw ConfigError("must be >= 1");
              c.record_every = k;
            }},
           {"snapshot_times", [](RunConfig& c, std::string_view v) {
              c.snapshot_times.clear();
              for (auto item : split_list(v)) c.snapshot_times.push_back(nonnegative(item));
            }},
           {"seed", [](RunConfig& c, std::string_view v) { c.seed = to_unsigned(v); }},
       }},
      {"temperature", initial_keys(&RunConfig::temperature)},
      {"fuel", initial_keys(&RunConfig::fuel)},
      {"audit",
       {
           {"bounds", [](RunConfig& c, std::string_view v) {
              c.audits.clear();
              for (auto item : split_list(v)) c.audits.push_back(parse_bound(item));
            }},
           {"eps0", [](RunConfig& c, std::string_view v) {
              const double e = to_double(v);
              if (!(e > 0.0 && e < 1.0)) throw ConfigError("eps0 must lie in (0, 1)");
              c.eps0 = e;
            }},
           {"level", [](RunConfig& c, std::string_view v) { c.front_level.value = positive(v); }},
           {"level_mode", [](RunConfig& c, std::string_view v) {
              c.front_level.mode = parse_level_mode(v);
            }},
       }},
      {"ignite",
       {
           {"low", [](RunConfig& c, std::string_view v) { c.ignite_low = nonnegative(v); }},
           {"high", [](RunConfig& c, std::string_view v) { c.ignite_high = positive(v); }},
           {"ratio", [](RunConfig& c, std::string_view v) {
              const double r = to_double(v);
              if (!(r > 1.0)) throw ConfigError("bracket ratio must exceed 1");
              c.ignite_ratio = r;
            }},
           {"snapshots", [](RunConfig& c, std::string_view v) {
              const auto k = to_unsigned(v);
              if (k < 10) throw ConfigError("need at least 10 snapshots");
              c.ignite_snapshots = k;
            }},
       }},
      {"output",
       {
           {"dir", [](RunConfig& c, std::string_view v) {
              if (v.empty()) throw ConfigError("output directory must not be empty");
              c.output_dir = std::string(v);
            }},
       }},
  };
  return table;
}

struct Issue {
  std::string key;  // "section.key"
  std::string message;
};

std::optional<Issue> find_issue(const RunConfig& c) {
  if (c.solver == SolverKind::picard) {
    const double slabs = c.horizon / c.picard.slab_length;
    if (std::abs(slabs - std::round(slabs)) > 1e-9 * slabs || std::round(slabs) < 1.0) {
      return Issue{"run.horizon", "horizon must be a multiple of scheme.slab_length"};
    }
  } else {
    try {
      step_count(c.horizon, c.dt);
    } catch (const InvalidInput&) {
      return Issue{"run.horizon", "horizon must be a whole number of steps of size scheme.dt"};
    }
  }
  for (double t : c.snapshot_times) {
    if (t > c.horizon) return Issue{"run.snapshot_times", "snapshot time beyond the horizon"};
  }
  if (c.front_level.mode == LevelMode::relative && !(c.front_level.value < 1.0)) {
    return Issue{"audit.level", "relative front level must lie in (0, 1)"};
  }
  if (!(c.ignite_high > c.ignite_low)) {
    return Issue{"ignite.high", "upper amplitude must exceed ignite.low"};
  }
  return std::nullopt;
}

// Shortest text that parses back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

void write_initial(std::ostream& os, const char* section, const InitialSpec& spec) {
  os << "[" << section << "]\n"
     << "scenario = " << scenario_name(spec.scenario) << "\n"
     << "amplitude = " << fmt(spec.params.amplitude) << "\n"
     << "sigma = " << fmt(spec.params.sigma) << "\n"
     << "half_width = " << fmt(spec.params.half_width) << "\n"
     << "edge_width = " << fmt(spec.params.edge_width) << "\n"
     << "radius = " << fmt(spec.params.radius) << "\n";
  if (spec.params.center) {
    os << "center = " << fmt((*spec.params.center)[0]) << ", " << fmt((*spec.params.center)[1])
       << "\n";
  }
  os << "\n";
}

}  // namespace

void RunConfig::validate() const {
  if (const auto issue = find_issue(*this)) {
    throw ConfigError("config: " + issue->key + ": " + issue->message);
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::map<std::string, std::size_t> key_lines;
  const SectionTable* section = nullptr;
  std::string section_name;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section_name = std::string(trim(line.substr(1, line.size() - 2)));
      const auto it = schema().find(section_name);
      if (it == schema().end()) {
        throw ConfigError(where + ": unknown section [" + section_name + "]");
      }
      section = &it->second;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section == nullptr) {
      throw ConfigError(where + ": key '" + key + "' appears before any [section] header");
    }
    const auto setter = section->find(key);
    if (setter == section->end()) {
      throw ConfigError(where + ": unknown key '" + key + "' in [" + section_name + "]");
    }
    try {
      setter->second(config, value);
    } catch (const std::exception& e) {
      throw ConfigError(where + ": key '" + key + "': " + e.what());
    }
    key_lines[section_name + "." + key] = line_no;
  }

  if (const auto issue = find_issue(config)) {
    const auto it = key_lines.find(issue->key);
    const std::string where =
        it == key_lines.end() ? std::string("default value") : "line " + std::to_string(it->second);
    throw ConfigError(where + ": key '" + issue->key + "': " + issue->message);
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_config_text(const RunConfig& c) {
  std::ostringstream os;
  os << "[grid]\n"
     << "dim = " << c.dim << "\n"
     << "n = " << c.n << "\n"
     << "extent = " << fmt(c.extent) << "\n\n"
     << "[model]\n"
     << "lambda = " << fmt(c.params.lambda) << "\n"
     << "beta = " << fmt(c.params.beta) << "\n\n"
     << "[scheme]\n"
     << "kind = " << solver_name(c.solver) << "\n"
     << "dt = " << fmt(c.dt) << "\n"
     << "slab_length = " << fmt(c.picard.slab_length) << "\n"
     << "nodes = " << c.picard.nodes << "\n"
     << "tol = " << fmt(c.picard.tol) << "\n"
     << "max_iter = " << c.picard.max_iter << "\n\n"
     << "[run]\n"
     << "horizon = " << fmt(c.horizon) << "\n"
     << "record_every = " << c.record_every << "\n"
     << "snapshot_times = ";
  for (std::size_t i = 0; i < c.snapshot_times.size(); ++i) {
    os << (i ? ", " : "") << fmt(c.snapshot_times[i]);
  }
  os << "\nseed = " << c.seed << "\n\n";
  write_initial(os, "temperature", c.temperature);
  write_initial(os, "fuel", c.fuel);
  os << "[audit]\nbounds = ";
  for (std::size_t i = 0; i < c.audits.size(); ++i) {
    os << (i ? ", " : "") << bound_name(c.audits[i]);
  }
  os << "\neps0 = " << fmt(c.eps0) << "\n"
     << "level = " << fmt(c.front_level.value) << "\n"
     << "level_mode = " << level_mode_name(c.front_level.mode) << "\n\n"
     << "[ignite]\n"
     << "low = " << fmt(c.ignite_low) << "\n"
     << "high = " << fmt(c.ignite_high) << "\n"
     << "ratio = " << fmt(c.ignite_ratio) << "\n"
     << "snapshots = " << c.ignite_snapshots << "\n\n"
     << "[output]\n"
     << "dir = " << c.output_dir << "\n";
  return os.str();
}

}  // namespace emberflow
