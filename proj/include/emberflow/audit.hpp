#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "emberflow/fit.hpp"
#include "emberflow/norms.hpp"
#include "emberflow/reaction.hpp"
#include "emberflow/trajectory.hpp"

namespace emberflow {

enum class BoundId {
  fuel_lp,
  linfty,
  l2_general_min_branch_a,
  l2_general_min_branch_b,
  l2_uniform,
  grad_smoothing,
  linear_growth_lambda0,
  xnorm_decay,
};

enum class BoundStatus { pass, fail, informational, inapplicable };

std::string_view bound_name(BoundId id) noexcept;
BoundId parse_bound(std::string_view name);
std::string_view status_name(BoundStatus status) noexcept;

/// Outcome of checking one a priori estimate along a trajectory.
///
/// Explicit-constant bounds report pass/fail. Bounds with an unstated
/// constant are informational: they carry the fitted constant, and
/// `consistent` records whether the qualitative behaviour held.
struct BoundReport {
  BoundId id = BoundId::fuel_lp;
  BoundStatus status = BoundStatus::informational;
  /// max over t > 0 of (observed - bound) / bound, without discretization slack.
  double worst_margin = 0.0;
  double worst_time = 0.0;
  double fitted_constant = std::numeric_limits<double>::quiet_NaN();
  bool consistent = true;
  std::string notes;

  bool failed() const noexcept { return status == BoundStatus::fail; }

  static std::string csv_header();
  std::string csv_row() const;
  std::string text_block() const;
};

/// Norms of the initial state, read from the first trajectory sample.
struct InitialNorms {
  double T_l1 = 0.0;
  double T_l2 = 0.0;
  double T_linf = 0.0;
  double Y_l1 = 0.0;
  double Y_linf = 0.0;
};

InitialNorms initial_norms(const TrajectoryRecord& record);

/// Running sup of (1 + t)^{d/2} ||T||_inf + ||T||_1.
class XNormAccumulator {
 public:
  explicit XNormAccumulator(int dim);
  void append(double time, double linf, double l1);
  double value() const noexcept { return value_; }

 private:
  int dim_;
  double value_ = 0.0;
  double last_time_ = -1.0;
};

/// ||Y(t)||_p <= ||Y0||_p (1 + 1e-12), plus pointwise monotonicity across
/// snapshots when present. p = 2 needs samples recorded in-process.
BoundReport audit_fuel(const TrajectoryRecord& record, Lp p);

/// ||T(t)||_inf <= e^{-lambda t} ||T0||_inf + (1 - e^{-lambda t}) ||Y0||_inf / lambda
/// + tol_disc, tol_disc = 1e-6 + 2 dt ||Y0||_inf. Inapplicable for lambda = 0.
BoundReport audit_linfty(const TrajectoryRecord& record, const ModelParams& params,
                         double initial_T_linf, double initial_Y_linf);

/// Slack used by audit_linfty.
double linfty_slack(double dt, double initial_Y_linf) noexcept;

/// ||T(t)||_inf <= ||T0||_inf + t ||Y0||_inf + 1e-6 (the lambda = 0 growth bound).
BoundReport audit_linear_growth(const TrajectoryRecord& record, double initial_T_linf,
                                double initial_Y_linf);

struct L2Audit {
  /// Informational: fitted C in ||T||_2^2 <= ||T0||_2^2 + C ||Y0 - Y||_1.
  BoundReport consumption;
  /// Pass/fail: ||T||_2^2 <= ||T0||_2^2 exp((c_r ||Y0||_inf - lambda) t) (1 + 1e-6),
  /// c_r = sup r(T)/T over 0 < T <= max_t ||T||_inf.
  BoundReport gronwall;
  /// Informational: sup_t ||T||_2 reached before horizon/2, non-increasing after.
  BoundReport uniform;
};

L2Audit audit_l2(const TrajectoryRecord& record, const ModelParams& params,
                 const InitialNorms& initial);

/// Informational: sup over t > 0 of ||grad T||_inf / (t^{-1/2} ||T0||_inf + t^{1/2} ||Y0||_inf).
BoundReport audit_gradient(const TrajectoryRecord& record, const InitialNorms& initial);

/// log-log fit of ||grad T(t)||_inf over samples with t in [t_min, t_max].
LineFit gradient_decay_fit(const TrajectoryRecord& record, double t_min, double t_max);

/// True when the two fitted constants agree within `relative` of the larger.
bool constants_stable(double a, double b, double relative = 0.2) noexcept;

/// Small-data decay: pass iff the X-norm stays <= 3 eps0 and
/// ||T(t)||_inf (1 + t)^{d/2} <= 3 eps0 at every sample. Inapplicable unless
/// max(||T0||_1, ||T0||_inf) < eps0.
BoundReport audit_decay(const TrajectoryRecord& record, double eps0, int dim);

}  // namespace emberflow
