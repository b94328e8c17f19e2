#include "dynreg/metrics.hpp"

#include <stdexcept>

namespace dynreg {
namespace {

double regret_difference(const Trajectory& trajectory, const ComparatorSequence& comparator,
                         const std::vector<LossFunction>& losses) {
  const std::size_t horizon = losses.size();
  if (trajectory.decisions.size() != horizon || comparator.points().size() != horizon) {
    throw std::invalid_argument("horizon mismatch between trajectory, comparator, and losses");
  }
  double learner = 0.0;
  double reference = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    learner += losses[t].value(trajectory.decisions[t]);
    reference += losses[t].value(comparator.points()[t]);
  }
  return learner - reference;
}

}  // namespace

double dynamic_regret(const Trajectory& trajectory, const ComparatorSequence& comparator,
                      const std::vector<LossFunction>& losses) {
  return regret_difference(trajectory, comparator, losses);
}

double shifting_regret(const Trajectory& trajectory, const ComparatorSequence& comparator,
                       const std::vector<LossFunction>& losses) {
  return regret_difference(trajectory, comparator, losses);
}

}  // namespace dynreg
