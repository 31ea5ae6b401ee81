#include "emberflow/ode_reference.hpp"

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "emberflow/grid.hpp"

namespace emberflow {

ConstantState reference_solution(ConstantState initial, const ModelParams& params, double horizon,
                                 double tol) {
  params.validate();
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw InvalidInput("reference_solution: horizon must be finite and >= 0");
  }
  if (!(tol > 0.0)) throw InvalidInput("reference_solution: tolerance must be > 0");
  if (initial.fuel < 0.0) throw InvalidInput("reference_solution: fuel must be >= 0");

  using State = std::array<double, 2>;
  namespace odeint = boost::numeric::odeint;
  const auto rhs = [&params](const State& s, State& ds, double) {
    const double burn = s[1] * arrhenius_rate(s[0]);
    ds[0] = -params.lambda * s[0] + burn;
    ds[1] = -params.beta * burn;
  };
  State s{initial.temperature, initial.fuel};
  if (horizon > 0.0) {
    auto stepper = odeint::make_dense_output(tol, tol, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_adaptive(stepper, rhs, s, 0.0, horizon, horizon / 1000.0);
  }
  if (!std::isfinite(s[0]) || !std::isfinite(s[1])) {
    throw NumericalDefect("reference_solution: non-finite state");
  }
  return {s[0], s[1]};
}

}  // namespace emberflow
