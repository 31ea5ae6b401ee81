// Command-line driver: emberflow <command> -c <config> [options]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "emberflow/audit.hpp"
#include "emberflow/config.hpp"
#include "emberflow/fit.hpp"
#include "emberflow/front.hpp"
#include "emberflow/integrate.hpp"
#include "emberflow/ode_reference.hpp"
#include "emberflow/output.hpp"
#include "emberflow/picard.hpp"
#include "emberflow/reaction.hpp"
#include "emberflow/scenarios.hpp"
#include "emberflow/semigroup.hpp"

namespace fs = std::filesystem;
using namespace emberflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string config_path;
  std::string output_dir;
  std::string bounds;
  std::string trajectory;
  int halvings = 4;
  bool quiet = false;
};

struct Context {
  std::string command;
  Options options;
  RunConfig config;
  std::ostream& out;
  std::vector<std::string> outputs;
  nlohmann::json extra = nlohmann::json::object();

  void say(const std::string& line) const {
    if (!options.quiet) out << line << '\n';
  }
  fs::path file(OutputSession& session, const std::string& name) {
    outputs.push_back(name);
    return session.file(name);
  }
};

fs::path output_dir(const Options& options, const RunConfig& config) {
  if (!options.output_dir.empty()) return options.output_dir;
  if (const char* env = std::getenv("EMBERFLOW_OUT"); env != nullptr && *env != '\0') return env;
  return config.output_dir;
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

SystemState initial_state(const RunConfig& config) {
  const GridSpec grid = config.grid();
  return {initial_data(grid, config.temperature.scenario, config.temperature.params),
          initial_data(grid, config.fuel.scenario, config.fuel.params), 0.0};
}

SchemeKind etd_kind(const RunConfig& config) {
  if (config.solver == SolverKind::picard) {
    throw ConfigError("scheme.kind: this command needs etd1 or etd2");
  }
  return config.solver == SolverKind::etd1 ? SchemeKind::etd1 : SchemeKind::etd2;
}

RunOptions run_options(const RunConfig& config) {
  RunOptions options;
  options.horizon = config.horizon;
  options.record_every = config.record_every;
  options.snapshot_times = config.snapshot_times;
  return options;
}

// Runs the configured solver and returns its trajectory.
TrajectoryRecord simulate_record(const RunConfig& config, const SystemState& initial,
                                 std::vector<SlabReport>* slabs = nullptr) {
  if (config.solver == SolverKind::picard) {
    PicardResult result = picard_solve(initial, config.params, config.picard, config.horizon);
    if (slabs != nullptr) *slabs = result.slabs;
    return std::move(result.record);
  }
  return run_simulation(initial, config.params, {etd_kind(config), config.dt}, run_options(config))
      .record;
}

void warn_contamination(const TrajectoryRecord& record) {
  if (record.boundary_contaminated()) {
    std::cerr << "warning: boundary contamination above " << kBoundaryContaminationThreshold
              << " from t = " << record.contamination_time() << "\n";
  }
}

void write_snapshots(Context& ctx, OutputSession& session, const TrajectoryRecord& record) {
  std::size_t index = 0;
  for (const auto& snap : record.snapshots()) {
    std::ostringstream stem;
    stem << "snapshot_" << std::setw(4) << std::setfill('0') << index++;
    write_snapshot(ctx.file(session, stem.str() + "_T.embr"), snap.temperature, snap.time,
                   FieldTag::temperature);
    write_snapshot(ctx.file(session, stem.str() + "_Y.embr"), snap.fuel, snap.time,
                   FieldTag::fuel);
  }
}

int cmd_simulate(Context& ctx, OutputSession& session) {
  const RunConfig& config = ctx.config;
  std::vector<SlabReport> slabs;
  const TrajectoryRecord record = simulate_record(config, initial_state(config), &slabs);
  warn_contamination(record);
  write_trajectory_csv(ctx.file(session, "trajectory.csv"), record.samples());
  write_snapshots(ctx, session, record);
  const auto& last = record.samples().back();
  ctx.say("simulated " + std::string(solver_name(config.solver)) + " to t = " + fmt(last.time) +
          ": ||T||_inf = " + fmt(last.linf_T) + ", min Y = " + fmt(last.min_Y));
  ctx.extra["samples"] = record.samples().size();
  ctx.extra["boundary_contaminated"] = record.boundary_contaminated();
  return kExitOk;
}

TrajectoryRecord record_from_csv(const RunConfig& config, const fs::path& path) {
  const double dt = config.solver == SolverKind::picard
                        ? config.picard.slab_length / static_cast<double>(config.picard.nodes - 1)
                        : config.dt;
  TrajectoryRecord record(config.grid(), config.params, dt, std::string(solver_name(config.solver)));
  for (const auto& sample : read_trajectory_csv(path)) record.append(sample);
  return record;
}

std::vector<BoundId> requested_bounds(const Options& options, const RunConfig& config) {
  std::vector<BoundId> ids;
  if (!options.bounds.empty()) {
    std::stringstream list(options.bounds);
    std::string item;
    while (std::getline(list, item, ',')) {
      const auto first = item.find_first_not_of(" \t");
      const auto last = item.find_last_not_of(" \t");
      if (first == std::string::npos) continue;
      ids.push_back(parse_bound(item.substr(first, last - first + 1)));
    }
    if (ids.empty()) throw InvalidInput("--bounds: empty list");
    return ids;
  }
  if (!config.audits.empty()) return config.audits;
  return {BoundId::fuel_lp,
          BoundId::linfty,
          BoundId::linear_growth_lambda0,
          BoundId::l2_general_min_branch_a,
          BoundId::l2_general_min_branch_b,
          BoundId::l2_uniform,
          BoundId::grad_smoothing,
          BoundId::xnorm_decay};
}

BoundReport inapplicable(BoundId id, std::string notes) {
  BoundReport report;
  report.id = id;
  report.status = BoundStatus::inapplicable;
  report.notes = std::move(notes);
  return report;
}

std::vector<BoundReport> run_audits(const TrajectoryRecord& record, const RunConfig& config,
                                    const std::vector<BoundId>& ids) {
  const InitialNorms initial = initial_norms(record);
  const ModelParams& params = config.params;
  std::optional<L2Audit> l2;
  std::vector<BoundReport> reports;
  for (BoundId id : ids) {
    switch (id) {
      case BoundId::fuel_lp:
        reports.push_back(audit_fuel(record, Lp::one));
        if (!std::isnan(record.samples().front().l2_Y)) {
          reports.push_back(audit_fuel(record, Lp::two));
        }
        reports.push_back(audit_fuel(record, Lp::infinity));
        break;
      case BoundId::linfty:
        reports.push_back(audit_linfty(record, params, initial.T_linf, initial.Y_linf));
        break;
      case BoundId::linear_growth_lambda0:
        if (params.lambda == 0.0) {
          reports.push_back(audit_linear_growth(record, initial.T_linf, initial.Y_linf));
        } else {
          reports.push_back(inapplicable(id, "lambda > 0; see linfty"));
        }
        break;
      case BoundId::l2_general_min_branch_a:
      case BoundId::l2_general_min_branch_b:
      case BoundId::l2_uniform:
        if (!l2) l2 = audit_l2(record, params, initial);
        reports.push_back(id == BoundId::l2_general_min_branch_a   ? l2->consumption
                          : id == BoundId::l2_general_min_branch_b ? l2->gronwall
                                                                   : l2->uniform);
        break;
      case BoundId::grad_smoothing:
        reports.push_back(audit_gradient(record, initial));
        break;
      case BoundId::xnorm_decay:
        reports.push_back(audit_decay(record, config.eps0, config.dim));
        break;
    }
  }
  return reports;
}

int cmd_audit(Context& ctx, OutputSession& session) {
  const RunConfig& config = ctx.config;
  const auto ids = requested_bounds(ctx.options, config);
  std::optional<TrajectoryRecord> record;
  if (!ctx.options.trajectory.empty()) {
    record = record_from_csv(config, ctx.options.trajectory);
  } else {
    record = simulate_record(config, initial_state(config));
    warn_contamination(*record);
    write_trajectory_csv(ctx.file(session, "trajectory.csv"), record->samples());
  }
  const auto reports = run_audits(*record, config, ids);
  write_reports_csv(ctx.file(session, "reports.csv"), reports);
  bool failed = false;
  for (const auto& report : reports) {
    failed = failed || report.failed();
    ctx.say(report.text_block());
  }
  ctx.extra["audit_failed"] = failed;
  return failed ? kExitFailure : kExitOk;
}

int cmd_picard(Context& ctx, OutputSession& session) {
  const RunConfig& config = ctx.config;
  const PicardResult result =
      picard_solve(initial_state(config), config.params, config.picard, config.horizon);
  warn_contamination(result.record);
  write_trajectory_csv(ctx.file(session, "trajectory.csv"), result.record.samples());
  std::ofstream slabs(ctx.file(session, "slabs.csv"));
  slabs << "start,length,iterations,contraction\n" << std::setprecision(17);
  double worst = 0.0;
  for (const auto& slab : result.slabs) {
    slabs << slab.start << ',' << slab.length << ',' << slab.iterations << ',' << slab.contraction
          << '\n';
    worst = std::max(worst, slab.contraction);
  }
  if (!slabs) throw std::runtime_error("cannot write slabs.csv");
  ctx.say("picard: " + std::to_string(result.slabs.size()) + " slabs, " +
          std::to_string(result.halvings) + " halvings, max contraction " + fmt(worst));
  ctx.extra["max_contraction"] = worst;
  ctx.extra["halvings"] = result.halvings;
  return kExitOk;
}

std::vector<double> evenly_spaced(double horizon, std::size_t count) {
  std::vector<double> times;
  for (std::size_t i = 1; i <= count; ++i) {
    times.push_back(horizon * static_cast<double>(i) / static_cast<double>(count));
  }
  return times;
}

int cmd_wavespeed(Context& ctx, OutputSession& session) {
  const RunConfig& config = ctx.config;
  if (config.dim != 1) throw ConfigError("grid.dim: wave speed needs dim = 1");
  RunOptions options = run_options(config);
  if (options.snapshot_times.empty()) {
    options.snapshot_times = evenly_spaced(config.horizon, config.ignite_snapshots);
  }
  const RunResult run =
      run_simulation(initial_state(config), config.params, {etd_kind(config), config.dt}, options);
  warn_contamination(run.record);
  write_trajectory_csv(ctx.file(session, "trajectory.csv"), run.record.samples());

  // Fit over the later half of the run, past the ignition transient.
  std::vector<Snapshot> late;
  for (const auto& snap : run.record.snapshots()) {
    if (snap.time >= 0.5 * config.horizon) late.push_back(snap);
  }
  const WaveSpeed wave = wave_speed(late, config.front_level);
  std::ofstream front(ctx.file(session, "front.csv"));
  front << "t,x_front\n" << std::setprecision(17);
  for (std::size_t i = 0; i < wave.times.size(); ++i) {
    front << wave.times[i] << ',' << wave.positions[i] << '\n';
  }
  if (!front) throw std::runtime_error("cannot write front.csv");
  ctx.say("front speed " + fmt(wave.speed, 8) + " (R^2 = " + fmt(wave.r_squared, 8) + ")");
  ctx.extra["speed"] = wave.speed;
  ctx.extra["r_squared"] = wave.r_squared;
  return kExitOk;
}

int cmd_ignite(Context& ctx, OutputSession& session) {
  const RunConfig& config = ctx.config;
  if (config.temperature.scenario != Scenario::gaussian) {
    throw ConfigError("temperature.scenario: ignition bisection needs a gaussian profile");
  }
  const GridSpec grid = config.grid();
  IgnitionSetup setup{grid,
                      config.params,
                      config.temperature.params,
                      initial_data(grid, config.fuel.scenario, config.fuel.params),
                      {etd_kind(config), config.dt},
                      config.horizon,
                      config.record_every,
                      config.ignite_snapshots,
                      config.front_level};
  const IgnitionBracket bracket =
      ignition_threshold(setup, config.ignite_low, config.ignite_high, config.ignite_ratio);

  std::ofstream table(ctx.file(session, "ignition.csv"));
  table << "amplitude,outcome,end_time,final_linf,speed,r_squared,front_travel,min_burnt_fuel\n"
        << std::setprecision(17);
  for (const auto& run : bracket.history) {
    table << run.amplitude << ',' << outcome_name(run.outcome) << ',' << run.end_time << ','
          << run.final_linf << ',' << (run.wave ? run.wave->speed : std::nan("")) << ','
          << (run.wave ? run.wave->r_squared : std::nan("")) << ',' << run.front_travel << ','
          << run.min_burnt_fuel << '\n';
  }
  if (!table) throw std::runtime_error("cannot write ignition.csv");
  ctx.say("ignition threshold in [" + fmt(bracket.low, 10) + ", " + fmt(bracket.high, 10) +
          "] after " + std::to_string(bracket.history.size()) + " runs");
  if (bracket.high_run.wave) {
    ctx.say("  igniting run: speed " + fmt(bracket.high_run.wave->speed) + ", R^2 " +
            fmt(bracket.high_run.wave->r_squared, 8) + ", burnt-fuel residue " +
            fmt(bracket.high_run.min_burnt_fuel));
  }
  ctx.extra["low"] = bracket.low;
  ctx.extra["high"] = bracket.high;
  return kExitOk;
}

double constant_value(const InitialSpec& spec, const char* key) {
  switch (spec.scenario) {
    case Scenario::zero: return 0.0;
    case Scenario::uniform: return spec.params.amplitude;
    default:
      throw ConfigError(std::string(key) + ".scenario: convergence needs zero or uniform data");
  }
}

int cmd_convergence(Context& ctx, OutputSession& session) {
  const RunConfig& config = ctx.config;
  if (ctx.options.halvings < 1) throw InvalidInput("--halvings must be >= 1");
  const double t0 = constant_value(config.temperature, "temperature");
  const double y0 = constant_value(config.fuel, "fuel");
  const ConstantState reference = reference_solution({t0, y0}, config.params, config.horizon);
  const GridSpec grid = GridSpec::make(config.dim, 8, config.extent);
  const SystemState initial{ScalarField::constant(grid, t0), ScalarField::constant(grid, y0), 0.0};

  std::ofstream table(ctx.file(session, "convergence.csv"));
  table << "scheme,dt,error_T,error_Y,order\n" << std::setprecision(17);
  ctx.say("reference T = " + fmt(reference.temperature, 15) +
          ", Y = " + fmt(reference.fuel, 15) + " at t = " + fmt(config.horizon));
  bool ok = true;
  for (SchemeKind kind : {SchemeKind::etd1, SchemeKind::etd2}) {
    std::vector<double> log_dt;
    std::vector<double> log_err;
    double previous = std::nan("");
    for (int k = 0; k <= ctx.options.halvings; ++k) {
      const double dt = config.dt / std::ldexp(1.0, k);
      RunOptions options;
      options.horizon = config.horizon;
      options.record_every = step_count(config.horizon, dt);
      const SystemState end = run_simulation(initial, config.params, {kind, dt}, options).final_state;
      const double err_t = std::abs(end.temperature[0] - reference.temperature);
      const double err_y = std::abs(end.fuel[0] - reference.fuel);
      const double err = std::max(err_t, err_y);
      const double order = std::log2(previous / err);
      previous = err;
      table << scheme_name(kind) << ',' << dt << ',' << err_t << ',' << err_y << ',' << order
            << '\n';
      ctx.say("  " + std::string(scheme_name(kind)) + "  dt = " + fmt(dt) +
              "  error = " + fmt(err, 4) + (k > 0 ? "  order = " + fmt(order, 4) : ""));
      log_dt.push_back(std::log(dt));
      log_err.push_back(std::log(err));
    }
    const double fitted = fit_line(log_dt, log_err).slope;
    const double required = kind == SchemeKind::etd1 ? 0.9 : 1.9;
    ctx.say(std::string(scheme_name(kind)) + " fitted order " + fmt(fitted, 4) +
            (fitted >= required ? " (ok)" : " (below " + fmt(required) + ")"));
    ctx.extra[std::string("order_") + std::string(scheme_name(kind))] = fitted;
    ok = ok && fitted >= required;
  }
  if (!table) throw std::runtime_error("cannot write convergence.csv");
  return ok ? kExitOk : kExitFailure;
}

// Dense-grid maximum of r(T)/T^p on (0, 1].
double grid_domination_constant(int p, std::size_t points) {
  double best = 0.0;
  for (std::size_t i = 1; i <= points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points);
    best = std::max(best, arrhenius_rate(t) / std::pow(t, p));
  }
  return best;
}

int cmd_lemma_checks(Context& ctx, OutputSession& session) {
  const RunConfig& config = ctx.config;
  std::ofstream table(ctx.file(session, "lemma_checks.csv"));
  table << "check,parameter,value,limit,pass\n" << std::setprecision(17);
  bool ok = true;
  const auto row = [&](const std::string& check, const std::string& parameter, double value,
                       double limit, bool pass) {
    table << check << ',' << parameter << ',' << value << ',' << limit << ','
          << (pass ? "true" : "false") << '\n';
    ctx.say("  " + check + " [" + parameter + "] " + fmt(value, 8) + (pass ? "  ok" : "  FAIL"));
    ok = ok && pass;
  };

  const ScalarField data = initial_state(config).temperature;
  if (lp_norm(data, Lp::infinity) > 0.0) {
    for (Lp p : {Lp::one, Lp::two, Lp::infinity}) {
      const double tol = p == Lp::two ? 1e-12 : 1e-3;
      for (double t : {0.01, 0.1, 1.0}) {
        const double ratio = verify_contraction(p, data, t);
        row("contraction", "p=" + std::string(lp_name(p)) + " t=" + fmt(t), ratio, 1.0 + tol,
            ratio <= 1.0 + tol);
      }
    }
  } else {
    ctx.say("  contraction skipped: initial temperature is zero");
  }

  // Mollified steps on a fine reference grid.
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(1e-3 * std::pow(100.0, i / 20.0));
  const GridSpec fine = GridSpec::make(1, 16384, 10.0);
  ScenarioParams wide;
  wide.half_width = 1.0;
  wide.edge_width = 0.003;
  ScenarioParams narrow;
  narrow.half_width = 0.005;
  narrow.edge_width = 0.002;
  const SmoothingFit gradient = verify_smoothing(
      1, Lp::infinity, Lp::infinity, initial_data(fine, Scenario::plateau, wide), times);
  row("smoothing", "k=1 p=inf q=inf", gradient.slope, gradient.predicted_slope,
      std::abs(gradient.slope - gradient.predicted_slope) <= 0.05);
  const SmoothingFit spread = verify_smoothing(
      0, Lp::infinity, Lp::one, initial_data(fine, Scenario::plateau, narrow), times);
  row("smoothing", "k=0 p=inf q=1", spread.slope, spread.predicted_slope,
      std::abs(spread.slope - spread.predicted_slope) <= 0.05);

  for (int p = 0; p <= 12; ++p) {
    const double c = poly_domination_constant(p);
    double worst = -1.0;
    for (std::size_t i = 0; i <= 100000; ++i) {
      const double t = static_cast<double>(i) / 100000.0;
      worst = std::max(worst, arrhenius_rate(t) - c * std::pow(t, p));
    }
    row("domination", "p=" + std::to_string(p), worst, 1e-15, worst <= 1e-15);
    const double grid = grid_domination_constant(p, 1000000);
    const double rel = std::abs(grid - c) / c;
    row("domination_grid", "p=" + std::to_string(p), rel, 1e-6, rel <= 1e-6);
  }
  if (!table) throw std::runtime_error("cannot write lemma_checks.csv");
  return ok ? kExitOk : kExitFailure;
}

void write_manifest(const Context& ctx, OutputSession& session, double wall_time, int code) {
  nlohmann::json manifest;
  manifest["tool"] = "emberflow";
  manifest["version"] = EMBERFLOW_VERSION;
  manifest["command"] = ctx.command;
  manifest["config_path"] = ctx.options.config_path;
  manifest["config"] = to_config_text(ctx.config);
  manifest["seed"] = ctx.config.seed;
  manifest["wall_time_seconds"] = wall_time;
  manifest["exit_code"] = code;
  manifest["outputs"] = ctx.outputs;
  manifest["results"] = ctx.extra;
  std::ofstream out(session.file("manifest.json"));
  out << manifest.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write manifest.json");
}

using Command = int (*)(Context&, OutputSession&);

int run_command(const std::string& name, Command command, const Options& options) {
  RunConfig config;
  try {
    config = load_config(options.config_path);
  } catch (const InvalidInput& e) {
    std::cerr << "emberflow: " << options.config_path << ": " << e.what() << '\n';
    return kExitUsage;
  }
  Context ctx{name, options, config, std::cout, {}, nlohmann::json::object()};
  const auto start = std::chrono::steady_clock::now();
  try {
    OutputSession session(output_dir(options, config));
    const int code = command(ctx, session);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(ctx, session, wall, code);
    session.commit();
    if (!options.quiet) std::cout << "outputs in " << session.dir().string() << '\n';
    return code;
  } catch (const InvalidInput& e) {
    std::cerr << "emberflow " << name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "emberflow " << name << ": " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arrhenius reaction-diffusion simulator and bound auditor", "emberflow"};
  app.set_version_flag("--version", EMBERFLOW_VERSION);
  app.require_subcommand(1);

  Options options;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "Run the configured solver and write trajectory.csv and snapshots"},
      {"audit", "Check the a priori bounds along a trajectory"},
      {"picard", "Solve by Picard iteration on time slabs"},
      {"wavespeed", "Measure the travelling-front speed"},
      {"ignite", "Bisect the ignition amplitude threshold"},
      {"convergence", "Time-step convergence study against an ODE reference"},
      {"lemma-checks", "Heat-flow contraction/smoothing and rate-domination checks"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", options.config_path, "Config file")->required();
    sub->add_option("-o,--output", options.output_dir, "Output directory");
    sub->add_flag("--quiet", options.quiet, "Suppress progress output");
    if (name == "audit") {
      sub->add_option("--bounds", options.bounds, "Comma-separated bound ids");
      sub->add_option("--trajectory", options.trajectory,
                      "Audit an existing trajectory.csv instead of simulating");
    }
    if (name == "convergence") {
      sub->add_option("--halvings", options.halvings, "Number of step halvings")
          ->check(CLI::Range(1, 20));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::map<std::string, Command> table = {
      {"simulate", cmd_simulate},       {"audit", cmd_audit},
      {"picard", cmd_picard},           {"wavespeed", cmd_wavespeed},
      {"ignite", cmd_ignite},           {"convergence", cmd_convergence},
      {"lemma-checks", cmd_lemma_checks},
  };
  const std::string name = app.get_subcommands().front()->get_name();
  return run_command(name, table.at(name), options);
}
