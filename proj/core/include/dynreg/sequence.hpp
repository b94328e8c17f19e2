#pragma once

#include <vector>

#include <Eigen/Core>

namespace dynreg {

/// Comparator-class budget: sequences {y_t} with
///   sum_{t=1}^{T-1} t^beta * ||y_{t+1} - y_t|| <= d_beta.
/// Time is 1-indexed; beta in [0,1).
struct DynamicsBudget {
  double beta = 0.0;
  double d_beta = 0.0;
};

DynamicsBudget make_dynamics_budget(double beta, double d_beta);

/// Comparator-class budget counted in value changes instead of path length:
/// sum_t 1{y_{t+1} != y_t} <= shifts.
struct ShiftBudget {
  int shifts = 0;
};

ShiftBudget make_shift_budget(int shifts);

/// What a learner did over one run: decisions x_1..x_T, realized composite
/// losses f_t(x_t), and the one-past-the-end point the final update produced
/// (the guarantee's H(x_{T+1}) term evaluates there).
struct Trajectory {
  std::vector<Eigen::VectorXd> decisions;
  std::vector<double> losses;
  int horizon = 0;
  Eigen::VectorXd final_point;
};

/// Sum over t of t^beta * ||points[t+1] - points[t]|| (1-indexed weights).
/// Throws std::invalid_argument("empty comparator") when points is empty.
double weighted_path_length(const std::vector<Eigen::VectorXd>& points, double beta);

/// Number of indices with points[t+1] != points[t] (exact comparison).
long shift_count(const std::vector<Eigen::VectorXd>& points);

/// Comparator sequence {y_t} with its budget usage computed once at
/// construction for a fixed beta.  Immutable value type.
class ComparatorSequence {
 public:
  ComparatorSequence() = default;

  static ComparatorSequence from_points(std::vector<Eigen::VectorXd> points, double beta);

  const std::vector<Eigen::VectorXd>& points() const { return points_; }
  double beta() const { return beta_; }
  double weighted_path_length() const { return weighted_path_length_; }
  long shifts() const { return shifts_; }
  int horizon() const { return static_cast<int>(points_.size()); }

 private:
  std::vector<Eigen::VectorXd> points_;
  double beta_ = 0.0;
  double weighted_path_length_ = 0.0;
  long shifts_ = 0;
};

}  // namespace dynreg
