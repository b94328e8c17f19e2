#pragma once

#include <optional>
#include <vector>

#include "dynreg/loss.hpp"
#include "dynreg/sequence.hpp"

namespace dynreg {

struct ReportParameters {
  int horizon = 0;
  int dimension = 0;
  double beta = 0.0;
  double d_beta = 0.0;
  double diameter_sq_bound = 0.0;
  double subgrad_sq_bound = 0.0;
};

/// Result plumbing for one run; fields are filled by whoever can compute them.
struct RegretReport {
  std::optional<double> static_regret;
  std::optional<double> dynamic_regret;
  std::optional<double> shifting_regret;
  std::optional<double> theory_upper;
  std::optional<double> theory_lower;
  ReportParameters parameters;
};

/// sum_t f_t(x_t) - sum_t f_t(y_t), using the full composite values.
/// Throws std::invalid_argument on any horizon mismatch.
double dynamic_regret(const Trajectory& trajectory, const ComparatorSequence& comparator,
                      const std::vector<LossFunction>& losses);

/// Same difference of sums; the name marks that the comparator is meant to be
/// drawn from a shift budget rather than a path-length budget.
double shifting_regret(const Trajectory& trajectory, const ComparatorSequence& comparator,
                       const std::vector<LossFunction>& losses);

}  // namespace dynreg
