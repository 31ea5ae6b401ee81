#pragma once

#include "emberflow/reaction.hpp"

namespace emberflow {

/// State of the spatially constant problem T' = -lambda T + Y r(T), Y' = -beta Y r(T).
struct ConstantState {
  double temperature = 0.0;
  double fuel = 0.0;
};

/// Adaptive Dormand-Prince integration of the spatially constant system to
/// `horizon`, with absolute and relative tolerance `tol`. Used as the
/// reference for convergence studies.
ConstantState reference_solution(ConstantState initial, const ModelParams& params, double horizon,
                                 double tol = 1e-13);

}  // namespace emberflow
