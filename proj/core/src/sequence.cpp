#include "dynreg/sequence.hpp"

#include <cmath>
#include <stdexcept>

namespace dynreg {

DynamicsBudget make_dynamics_budget(double beta, double d_beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in [0, 1)");
  if (!(d_beta >= 0.0)) throw std::invalid_argument("path budget must be nonnegative");
  return DynamicsBudget{beta, d_beta};
}

ShiftBudget make_shift_budget(int shifts) {
  if (shifts < 0) throw std::invalid_argument("shift budget must be nonnegative");
  return ShiftBudget{shifts};
}

double weighted_path_length(const std::vector<Eigen::VectorXd>& points, double beta) {
  if (points.empty()) throw std::invalid_argument("empty comparator");
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < points.size(); ++t) {
    total += std::pow(static_cast<double>(t + 1), beta) * (points[t + 1] - points[t]).norm();
  }
  return total;
}

long shift_count(const std::vector<Eigen::VectorXd>& points) {
  if (points.empty()) throw std::invalid_argument("empty comparator");
  long shifts = 0;
  for (std::size_t t = 0; t + 1 < points.size(); ++t) {
    if (points[t + 1] != points[t]) ++shifts;
  }
  return shifts;
}

ComparatorSequence ComparatorSequence::from_points(std::vector<Eigen::VectorXd> points,
                                                   double beta) {
  if (points.empty()) throw std::invalid_argument("empty comparator");
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in [0, 1)");
  ComparatorSequence seq;
  seq.weighted_path_length_ = dynreg::weighted_path_length(points, beta);
  seq.shifts_ = dynreg::shift_count(points);
  seq.points_ = std::move(points);
  seq.beta_ = beta;
  return seq;
}

}  // namespace dynreg
