#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dynreg/schedule.hpp"
#include "dynreg/sequence.hpp"

namespace dynreg {

/// E|S_T| for a simple +-1 random walk with even T, computed exactly:
///   E|S_{2J}| = (2J / 4^J) * C(2J, J),
/// with exact integers up to T = 60 and an exactly-representable product
/// recurrence beyond.  Throws std::invalid_argument for odd or nonpositive T.
double walk_expectation_closed_form(int horizon);

/// Same expectation by direct enumeration of binomial outcomes,
///   E|S_T| = sum_m C(T, m) * |2m - T| / 2^T,
/// any parity, T <= 24 (throws beyond; the point is an independent oracle).
double walk_expectation_enumeration(int horizon);

/// Monte-Carlo check of E||sum_t v_t||_1 >= d * (sqrt(T/2) - 1) for i.i.d.
/// +-1 coordinate vectors.  exact_mean is filled when T is even (d * E|S_T|).
/// ok means: empirical mean >= floor - 3 standard errors.
struct WalkBoundCheck {
  double empirical_mean = 0.0;
  double std_error = 0.0;
  double floor = 0.0;
  std::optional<double> exact_mean;
  int seeds = 0;
  bool ok = false;
};
WalkBoundCheck l1_walk_lower_bound_check(int dimension, int horizon, int seeds,
                                         std::uint64_t seed0);

/// sum_{t=1}^T t^(-gamma)  vs  T^(1-gamma) / (1-gamma), for gamma in [0,1);
/// ok means lhs <= rhs (+1e-12 slack for the gamma = 0 equality case).
struct SeriesBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};
SeriesBoundCheck series_bound_check(double gamma, int horizon);

/// (1/4^n) * C(2n, n), via log-gamma; the walk floor rests on this being
/// >= 1/(2*sqrt(n)).
double central_binomial_ratio(int n);

/// The guarantee for proximal online gradient with a positive non-increasing
/// schedule, evaluated exactly:
///   sqrt(R) * max_t {1/(eta_t * t^beta)} * d_beta + R/(2*eta_T)
///   + (G/2) * sum_t eta_t + h_first - h_final,
/// where h_first = H(x_1) and h_final = H(x_{T+1}).
double pog_regret_bound(const Schedule& schedule, const DynamicsBudget& budget,
                        double diameter_sq_bound, double subgrad_sq_bound, double h_first,
                        double h_final);

/// Closed form the tuned schedule's bound telescopes to:
///   sqrt(2*G*sqrt(R)*d_beta*T^(1-beta)/(1-gamma)) + sqrt(G*R*T/(4*(1-gamma)))
///   + h_first - h_final.
double pog_regret_bound_closed_form(double gamma, const DynamicsBudget& budget,
                                    double diameter_sq_bound, double subgrad_sq_bound,
                                    int horizon, double h_first, double h_final);

/// What no learner can beat against the adversarial game, up to constants:
///   sqrt(d_beta * T^(1-beta)) + sqrt(T).
double adversarial_regret_floor(const DynamicsBudget& budget, int horizon);

/// A shift budget implies a path budget: M changes inside a set of squared
/// diameter R move at most M * sqrt(R).
double shift_to_path_budget(const ShiftBudget& budget, double diameter_sq_bound);

/// Least-squares slope of log(y) against log(x); pairs with a nonpositive
/// coordinate are skipped.  Throws std::invalid_argument with fewer than two
/// usable points.
double log_log_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace dynreg
