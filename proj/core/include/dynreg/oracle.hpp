#pragma once

#include <optional>
#include <vector>

#include "dynreg/adversary.hpp"
#include "dynreg/loss.hpp"
#include "dynreg/metrics.hpp"
#include "dynreg/sequence.hpp"

namespace dynreg {

enum class OracleMethod {
  /// Projected subgradient over the product space X^T, alternating a
  /// subgradient step with a Dykstra projection onto {weighted path <= d_beta}
  /// intersected with X^T.  General-purpose, approximate.
  ProjectedSubgradient,
  /// Exhaustive search over a discretized X^T; tiny instances only.
  GridSearch,
  /// Exact one-dimensional solver for linear(+L1) losses on an interval:
  /// bisection on the single path multiplier, each evaluation a dynamic
  /// program over convex piecewise-linear stage costs, plus a feasible blend
  /// of the final dual bracket's two solutions.
  DualPathDp,
};

struct OracleConfig {
  /// Empty selects automatically: DualPathDp when the instance is
  /// one-dimensional with tagged linear smooth parts, else ProjectedSubgradient.
  std::optional<OracleMethod> method;
  /// Subgradient iteration cap; 0 means 50 * horizon.
  int max_iterations = 0;
  /// Absolute bisection tolerance on the path-ball dual multiplier.
  double multiplier_tol = 1e-8;
  /// Step size is step_scale / sqrt(k); 0 means sqrt(R / G).
  double step_scale = 0.0;
  /// Convergence declared when the best objective improves by less than this
  /// over a 100-iteration window.
  double objective_tol = 1e-9;
  int dykstra_rounds = 12;
  int tv_prox_iterations = 200;
};

struct OracleSolution {
  ComparatorSequence comparator;
  /// sum_t f_t(y_t), re-evaluated on the returned points.
  double objective = 0.0;
  OracleMethod method = OracleMethod::ProjectedSubgradient;
  int iterations = 0;
  /// d_beta minus the returned sequence's weighted path length.
  double constraint_slack = 0.0;
  /// Best-objective decrease over the final 100-iteration window.
  double recent_improvement = 0.0;
  bool converged = true;
};

/// Best comparator in hindsight: minimize sum_t f_t(y_t) over y_t in X with
/// sum_t t^beta ||y_{t+1} - y_t|| <= d_beta.  Non-convergence within the
/// iteration cap returns the best feasible iterate flagged unconverged.
OracleSolution solve_offline(const std::vector<LossFunction>& losses, const DomainSpec& domain,
                             const DynamicsBudget& budget, const OracleConfig& config = {});

/// Same problem for a realized adversarial game, routed to the exact
/// one-dimensional method when the game is one-dimensional.
OracleSolution solve_offline(const RademacherGame& game, const OracleConfig& config = {});

/// Exhaustive minimum over a grid of spacing `resolution` per axis, feasibility
/// filtered.  Only dimension <= 2 and horizon <= 4 are accepted; anything
/// larger (or a grid over ~10^8 sequences) throws
/// std::invalid_argument("grid oracle out of range").
OracleSolution grid_oracle(const std::vector<LossFunction>& losses, const DomainSpec& domain,
                           const DynamicsBudget& budget, double resolution);

}  // namespace dynreg
