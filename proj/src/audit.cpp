#include "emberflow/audit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <utility>

namespace emberflow {

namespace {

constexpr std::array<std::pair<BoundId, std::string_view>, 8> kBoundNames = {{
    {BoundId::fuel_lp, "fuel_lp"},
    {BoundId::linfty, "linfty"},
    {BoundId::l2_general_min_branch_a, "l2_general_min_branch_a"},
    {BoundId::l2_general_min_branch_b, "l2_general_min_branch_b"},
    {BoundId::l2_uniform, "l2_uniform"},
    {BoundId::grad_smoothing, "grad_smoothing"},
    {BoundId::linear_growth_lambda0, "linear_growth_lambda0"},
    {BoundId::xnorm_decay, "xnorm_decay"},
}};

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Tracks the largest relative excess over the bound among t > 0 samples.
struct MarginTracker {
  double worst = -std::numeric_limits<double>::infinity();
  double time = 0.0;

  void update(double t, double observed, double bound) {
    if (t <= 0.0) return;
    double margin;
    if (bound > 0.0) {
      margin = (observed - bound) / bound;
    } else {
      margin = observed > 0.0 ? observed : 0.0;
    }
    if (margin > worst) {
      worst = margin;
      time = t;
    }
  }
  double value() const { return std::isfinite(worst) ? worst : 0.0; }
};

void require_samples(const TrajectoryRecord& record) {
  if (record.samples().empty()) throw InvalidInput("audit: trajectory has no samples");
}

}  // namespace

std::string_view bound_name(BoundId id) noexcept {
  for (const auto& [key, name] : kBoundNames) {
    if (key == id) return name;
  }
  return "unknown";
}

BoundId parse_bound(std::string_view name) {
  for (const auto& [key, text] : kBoundNames) {
    if (text == name) return key;
  }
  if (name == "fuel") return BoundId::fuel_lp;
  throw InvalidInput("unknown bound '" + std::string(name) + "'");
}

std::string_view status_name(BoundStatus status) noexcept {
  switch (status) {
    case BoundStatus::pass: return "pass";
    case BoundStatus::fail: return "fail";
    case BoundStatus::informational: return "informational";
    case BoundStatus::inapplicable: return "inapplicable";
  }
  return "unknown";
}

std::string BoundReport::csv_header() {
  return "bound_id,status,worst_margin,worst_time,fitted_constant,consistent,notes";
}

std::string BoundReport::csv_row() const {
  std::string quoted = notes;
  std::replace(quoted.begin(), quoted.end(), '"', '\'');
  std::ostringstream os;
  os << bound_name(id) << ',' << status_name(status) << ',' << format_number(worst_margin) << ','
     << format_number(worst_time) << ','
     << (std::isnan(fitted_constant) ? std::string() : format_number(fitted_constant)) << ','
     << (consistent ? "yes" : "no") << ",\"" << quoted << '"';
  return os.str();
}

std::string BoundReport::text_block() const {
  std::ostringstream os;
  os << "[" << bound_name(id) << "] " << status_name(status) << "\n"
     << "  worst_margin    " << std::setprecision(6) << worst_margin << " at t=" << worst_time
     << "\n";
  if (!std::isnan(fitted_constant)) os << "  fitted_constant " << fitted_constant << "\n";
  if (status == BoundStatus::informational) {
    os << "  consistent      " << (consistent ? "yes" : "no") << "\n";
  }
  if (!notes.empty()) os << "  notes           " << notes << "\n";
  return os.str();
}

InitialNorms initial_norms(const TrajectoryRecord& record) {
  require_samples(record);
  const TrajectorySample& s = record.samples().front();
  return {s.l1_T, s.l2_T, s.linf_T, s.l1_Y, s.linf_Y};
}

XNormAccumulator::XNormAccumulator(int dim) : dim_(dim) {
  if (dim != 1 && dim != 2) throw InvalidInput("xnorm: dimension must be 1 or 2");
}

void XNormAccumulator::append(double time, double linf, double l1) {
  if (!(time > last_time_)) throw InvalidInput("xnorm: times must be strictly increasing");
  last_time_ = time;
  const double weight = std::pow(1.0 + time, 0.5 * dim_);
  value_ = std::max(value_, weight * linf + l1);
}

BoundReport audit_fuel(const TrajectoryRecord& record, Lp p) {
  require_samples(record);
  const auto& samples = record.samples();
  auto pick = [p](const TrajectorySample& s) {
    switch (p) {
      case Lp::one: return s.l1_Y;
      case Lp::two: return s.l2_Y;
      case Lp::infinity: return s.linf_Y;
    }
    return s.linf_Y;
  };
  BoundReport report;
  report.id = BoundId::fuel_lp;
  const double bound = pick(samples.front());
  if (std::isnan(bound)) {
    throw InvalidInput("audit_fuel: trajectory carries no L2 fuel norms (not recorded in CSV)");
  }
  MarginTracker margin;
  bool ok = true;
  for (const auto& s : samples) {
    const double observed = pick(s);
    margin.update(s.time, observed, bound);
    if (observed > bound * (1.0 + 1e-12)) ok = false;
    if (s.min_Y < 0.0) ok = false;
  }
  std::ostringstream notes;
  notes << "p=" << lp_name(p);
  const auto& snaps = record.snapshots();
  std::size_t violations = 0;
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const auto y = snaps[k].fuel.values();
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] < 0.0) ++violations;
      if (k > 0 && y[i] > snaps[k - 1].fuel[i]) ++violations;
    }
  }
  if (!snaps.empty()) notes << "; pointwise monotonicity checked on " << snaps.size() << " snapshots";
  if (violations > 0) {
    ok = false;
    notes << "; " << violations << " pointwise violations";
  }
  report.status = ok ? BoundStatus::pass : BoundStatus::fail;
  report.worst_margin = margin.value();
  report.worst_time = margin.time;
  report.notes = notes.str();
  return report;
}

double linfty_slack(double dt, double initial_Y_linf) noexcept {
  return 1e-6 + 2.0 * dt * initial_Y_linf;
}

BoundReport audit_linfty(const TrajectoryRecord& record, const ModelParams& params,
                         double initial_T_linf, double initial_Y_linf) {
  require_samples(record);
  BoundReport report;
  report.id = BoundId::linfty;
  if (!(params.lambda > 0.0)) {
    report.status = BoundStatus::inapplicable;
    report.notes = "requires lambda > 0; use linear_growth_lambda0";
    return report;
  }
  const double lambda = params.lambda;
  const double slack = linfty_slack(record.dt(), initial_Y_linf);
  MarginTracker margin;
  bool ok = true;
  for (const auto& s : record.samples()) {
    const double decay = std::exp(-lambda * s.time);
    const double bound = decay * initial_T_linf + (1.0 - decay) * initial_Y_linf / lambda;
    margin.update(s.time, s.linf_T, bound);
    if (s.linf_T > bound + slack) ok = false;
  }
  report.status = ok ? BoundStatus::pass : BoundStatus::fail;
  report.worst_margin = margin.value();
  report.worst_time = margin.time;
  std::ostringstream notes;
  notes << "tol_disc=" << slack;
  report.notes = notes.str();
  return report;
}

BoundReport audit_linear_growth(const TrajectoryRecord& record, double initial_T_linf,
                                double initial_Y_linf) {
  require_samples(record);
  BoundReport report;
  report.id = BoundId::linear_growth_lambda0;
  MarginTracker margin;
  bool ok = true;
  for (const auto& s : record.samples()) {
    const double bound = initial_T_linf + s.time * initial_Y_linf;
    margin.update(s.time, s.linf_T, bound);
    if (s.linf_T > bound + 1e-6) ok = false;
  }
  report.status = ok ? BoundStatus::pass : BoundStatus::fail;
  report.worst_margin = margin.value();
  report.worst_time = margin.time;
  return report;
}

L2Audit audit_l2(const TrajectoryRecord& record, const ModelParams& params,
                 const InitialNorms& initial) {
  require_samples(record);
  const auto& samples = record.samples();
  const double t0_sq = initial.T_l2 * initial.T_l2;
  L2Audit out;

  // Consumption branch: ||Y0 - Y||_1 = ||Y0||_1 - ||Y||_1 since 0 <= Y <= Y0.
  out.consumption.id = BoundId::l2_general_min_branch_a;
  out.consumption.status = BoundStatus::informational;
  double fitted = 0.0;
  double fitted_time = 0.0;
  std::size_t used = 0;
  for (const auto& s : samples) {
    const double burnt = initial.Y_l1 - s.l1_Y;
    if (!(burnt > 1e-12 * std::max(1.0, initial.Y_l1))) continue;
    const double ratio = (s.l2_T * s.l2_T - t0_sq) / burnt;
    ++used;
    if (ratio > fitted) {
      fitted = ratio;
      fitted_time = s.time;
    }
  }
  out.consumption.fitted_constant = fitted;
  out.consumption.worst_time = fitted_time;
  out.consumption.notes = used == 0 ? "no fuel consumed; constant not identifiable"
                                    : "least upper ratio over " + std::to_string(used) + " samples";

  // Groenwall branch with the trajectory's own constant.
  out.gronwall.id = BoundId::l2_general_min_branch_b;
  double t_max = 0.0;
  for (const auto& s : samples) t_max = std::max(t_max, s.linf_T);
  const double c_r = rate_over_temperature_sup(t_max);
  const double growth = c_r * initial.Y_linf - params.lambda;
  MarginTracker margin;
  std::size_t violations = 0;
  for (const auto& s : samples) {
    const double bound = t0_sq * std::exp(growth * s.time);
    const double observed = s.l2_T * s.l2_T;
    margin.update(s.time, observed, bound);
    if (observed > bound * (1.0 + 1e-6)) ++violations;
  }
  out.gronwall.status = violations == 0 ? BoundStatus::pass : BoundStatus::fail;
  out.gronwall.worst_margin = margin.value();
  out.gronwall.worst_time = margin.time;
  out.gronwall.fitted_constant = c_r;
  {
    std::ostringstream notes;
    notes << "c_r=" << c_r << " (T_max=" << t_max << "), exponent rate " << growth
          << ", violations=" << violations;
    out.gronwall.notes = notes.str();
  }

  // Uniform-in-time bound, checked qualitatively.
  out.uniform.id = BoundId::l2_uniform;
  out.uniform.status = BoundStatus::informational;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].l2_T > samples[peak].l2_T) peak = i;
  }
  const double horizon = samples.back().time;
  const double start = samples.front().time;
  bool monotone_after = true;
  for (std::size_t i = peak + 1; i < samples.size(); ++i) {
    if (samples[i].l2_T > samples[i - 1].l2_T * (1.0 + 1e-12)) monotone_after = false;
  }
  const bool early_peak = samples[peak].time - start <= 0.5 * (horizon - start);
  out.uniform.fitted_constant = samples[peak].l2_T;
  out.uniform.worst_time = samples[peak].time;
  out.uniform.consistent = early_peak && monotone_after;
  {
    std::ostringstream notes;
    notes << "sup ||T||_2=" << samples[peak].l2_T << " at t=" << samples[peak].time
          << (early_peak ? " (before" : " (after") << " horizon/2)"
          << (monotone_after ? ", non-increasing afterwards" : ", grows again afterwards");
    out.uniform.notes = notes.str();
  }
  return out;
}

BoundReport audit_gradient(const TrajectoryRecord& record, const InitialNorms& initial) {
  require_samples(record);
  BoundReport report;
  report.id = BoundId::grad_smoothing;
  report.status = BoundStatus::informational;
  double sup_ratio = 0.0;
  for (const auto& s : record.samples()) {
    if (s.time <= 0.0) continue;
    const double root = std::sqrt(s.time);
    const double envelope = initial.T_linf / root + root * initial.Y_linf;
    if (!(envelope > 0.0)) continue;
    const double ratio = s.gradsup_T / envelope;
    if (ratio > sup_ratio) {
      sup_ratio = ratio;
      report.worst_time = s.time;
    }
  }
  report.fitted_constant = sup_ratio;
  report.consistent = std::isfinite(sup_ratio);
  report.notes = "sup_t ||grad T||_inf / (t^-1/2 ||T0||_inf + t^1/2 ||Y0||_inf)";
  return report;
}

LineFit gradient_decay_fit(const TrajectoryRecord& record, double t_min, double t_max) {
  std::vector<double> x, y;
  for (const auto& s : record.samples()) {
    if (s.time < t_min || s.time > t_max || !(s.gradsup_T > 0.0)) continue;
    x.push_back(std::log(s.time));
    y.push_back(std::log(s.gradsup_T));
  }
  return fit_line(x, y);
}

bool constants_stable(double a, double b, double relative) noexcept {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return true;
  return std::abs(a - b) <= relative * scale;
}

BoundReport audit_decay(const TrajectoryRecord& record, double eps0, int dim) {
  require_samples(record);
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw InvalidInput("audit_decay: eps0 must lie in (0, 1)");
  BoundReport report;
  report.id = BoundId::xnorm_decay;
  const TrajectorySample& first = record.samples().front();
  const double size = std::max(first.l1_T, first.linf_T);
  if (!(size < eps0)) {
    report.status = BoundStatus::inapplicable;
    std::ostringstream notes;
    notes << "smallness hypothesis violated: max(||T0||_1, ||T0||_inf)=" << size
          << " >= eps0=" << eps0;
    report.notes = notes.str();
    return report;
  }
  const double ceiling = 3.0 * eps0;
  XNormAccumulator xnorm(dim);
  bool ok = true;
  double worst_weighted = 0.0;
  double previous = -1.0;
  for (const auto& s : record.samples()) {
    xnorm.append(s.time, s.linf_T, s.l1_T);
    const double weighted = std::pow(1.0 + s.time, 0.5 * dim) * s.linf_T;
    worst_weighted = std::max(worst_weighted, weighted);
    if (xnorm.value() > ceiling || weighted > ceiling) ok = false;
    if (xnorm.value() > previous) report.worst_time = s.time;
    previous = xnorm.value();
  }
  report.worst_margin = (xnorm.value() - ceiling) / ceiling;
  report.status = ok ? BoundStatus::pass : BoundStatus::fail;
  report.fitted_constant = xnorm.value() / eps0;
  std::ostringstream notes;
  notes << "X-norm=" << xnorm.value() << ", sup (1+t)^{d/2}||T||_inf=" << worst_weighted
        << ", ceiling 3*eps0=" << ceiling;
  report.notes = notes.str();
  return report;
}

}  // namespace emberflow
