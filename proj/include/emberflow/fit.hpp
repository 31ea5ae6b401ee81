#pragma once

#include <span>

namespace emberflow {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 distinct x.
/// r_squared is 1 when y is constant and exactly fitted.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace emberflow
