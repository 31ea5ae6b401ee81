#pragma once

#include <stdexcept>
#include <vector>

#include "emberflow/grid.hpp"
#include "emberflow/reaction.hpp"
#include "emberflow/trajectory.hpp"

namespace emberflow {

struct PicardConfig {
  double slab_length = 0.5;
  /// Uniform time nodes per slab, end points included.
  std::size_t nodes = 9;
  /// Sup-norm distance between successive iterates that counts as converged.
  double tol = 1e-10;
  std::size_t max_iter = 60;

  void validate() const;
  bool operator==(const PicardConfig&) const = default;
};

/// Raised when the fixed-point map does not converge on a slab.
class PicardFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SlabReport {
  double start = 0.0;
  double length = 0.0;
  std::size_t iterations = 0;
  /// Largest observed ratio ||d_{j+1}|| / ||d_j|| of successive updates (0 if
  /// the first update already met the tolerance).
  double contraction = 0.0;
};

struct PicardResult {
  TrajectoryRecord record;
  SystemState final_state;
  std::vector<SlabReport> slabs;
  /// Number of times the slab length was halved after non-contraction.
  int halvings = 0;
};

/**
 * Solves the mild-solution equations by fixed-point iteration on time slabs.
 *
 * On a slab [t0, t0 + h] with nodes t_m = t0 + m h / (M - 1), each iteration
 * maps the candidate (T_j, Y_j) at the nodes to
 *
 *   T_{j+1}(t_m) = P(t_m - t0) T(t0) + sum over nodes of the Duhamel term
 *   Y_{j+1}(t_m) = Y(t0) exp(-beta * trapezoid_{t0..t_m} r(T_j))
 *
 * where P(s) = exp(-lambda s) exp(s Laplacian). The Duhamel integral
 * interpolates Y_j r(T_j) linearly between nodes and integrates each Fourier
 * mode of P exactly against it (a product trapezoidal rule).
 *
 * Three consecutive iterations with ratio >= 1 halve the slab length (kept for
 * the rest of the run), up to ten times. Exceeding max_iter throws PicardFailure.
 * Samples are recorded at t = 0 and every slab end.
 */
PicardResult picard_solve(const SystemState& initial, const ModelParams& params,
                          const PicardConfig& config, double horizon);

}  // namespace emberflow
