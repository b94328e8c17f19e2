#include "dynreg/analysis.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dynreg/rng.hpp"

namespace dynreg {
namespace {

// C(n, k) in exact integer arithmetic; safe in uint64 for n <= 60.
std::uint64_t binomial_u64(int n, int k) {
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

}  // namespace

double walk_expectation_closed_form(int horizon) {
  if (horizon <= 0 || horizon % 2 != 0)
    throw std::invalid_argument("closed form requires a positive even horizon");
  const int half = horizon / 2;
  if (horizon <= 60) {
    const double c = static_cast<double>(binomial_u64(horizon, half));
    return static_cast<double>(horizon) * c / std::pow(4.0, half);
  }
  // C(2J, J)/4^J by the product recurrence prod_j (2j-1)/(2j); extended
  // precision keeps the accumulated rounding below one double ulp at any T.
  long double ratio = 1.0L;
  for (int j = 1; j <= half; ++j) {
    ratio *= static_cast<long double>(2 * j - 1) / static_cast<long double>(2 * j);
  }
  return static_cast<double>(static_cast<long double>(horizon) * ratio);
}

double walk_expectation_enumeration(int horizon) {
  if (horizon <= 0) throw std::invalid_argument("horizon must be positive");
  if (horizon > 24) throw std::invalid_argument("enumeration limited to horizon <= 24");
  double total = 0.0;
  for (int m = 0; m <= horizon; ++m) {
    total += static_cast<double>(binomial_u64(horizon, m)) *
             std::abs(2.0 * m - static_cast<double>(horizon));
  }
  return total / std::pow(2.0, horizon);
}

WalkBoundCheck l1_walk_lower_bound_check(int dimension, int horizon, int seeds,
                                         std::uint64_t seed0) {
  if (dimension < 1 || horizon < 1 || seeds < 1000)
    throw std::invalid_argument(
        "walk check needs dimension >= 1, horizon >= 1, seeds >= 1000");
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> coordinate_sum(dimension);
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t seed = replication_seed(seed0, static_cast<std::uint64_t>(s));
    for (int i = 0; i < dimension; ++i) coordinate_sum[i] = 0.0;
    for (int t = 1; t <= horizon; ++t) {
      for (int i = 0; i < dimension; ++i) coordinate_sum[i] += rademacher_sign(seed, t, i);
    }
    double l1 = 0.0;
    for (int i = 0; i < dimension; ++i) l1 += std::abs(coordinate_sum[i]);
    sum += l1;
    sum_sq += l1 * l1;
  }
  WalkBoundCheck check;
  check.seeds = seeds;
  check.empirical_mean = sum / seeds;
  const double variance =
      (sum_sq - sum * sum / seeds) / (static_cast<double>(seeds) - 1.0);
  check.std_error = std::sqrt(std::max(variance, 0.0) / seeds);
  check.floor = dimension * (std::sqrt(static_cast<double>(horizon) / 2.0) - 1.0);
  if (horizon % 2 == 0) {
    check.exact_mean = dimension * walk_expectation_closed_form(horizon);
  }
  check.ok = check.empirical_mean >= check.floor - 3.0 * check.std_error;
  return check;
}

SeriesBoundCheck series_bound_check(double gamma, int horizon) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("invalid exponent");
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  SeriesBoundCheck check;
  for (int t = 1; t <= horizon; ++t) check.lhs += std::pow(static_cast<double>(t), -gamma);
  check.rhs = std::pow(static_cast<double>(horizon), 1.0 - gamma) / (1.0 - gamma);
  check.ok = check.lhs <= check.rhs + 1e-12 * std::max(1.0, check.rhs);
  return check;
}

double central_binomial_ratio(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  const double log_value = std::lgamma(2.0 * n + 1.0) - 2.0 * std::lgamma(n + 1.0) -
                           n * std::log(4.0);
  return std::exp(log_value);
}

double pog_regret_bound(const Schedule& schedule, const DynamicsBudget& budget,
                        double diameter_sq_bound, double subgrad_sq_bound, double h_first,
                        double h_final) {
  const int horizon = schedule.horizon();
  double inverse_weighted_step_max = 0.0;
  double step_sum = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    const double eta = schedule.at(t);
    if (!(eta > 0.0)) throw std::invalid_argument("nonpositive step");
    inverse_weighted_step_max = std::max(
        inverse_weighted_step_max, 1.0 / (eta * std::pow(static_cast<double>(t), budget.beta)));
    step_sum += eta;
  }
  return std::sqrt(diameter_sq_bound) * inverse_weighted_step_max * budget.d_beta +
         diameter_sq_bound / (2.0 * schedule.at(horizon)) +
         0.5 * subgrad_sq_bound * step_sum + h_first - h_final;
}

double pog_regret_bound_closed_form(double gamma, const DynamicsBudget& budget,
                                    double diameter_sq_bound, double subgrad_sq_bound,
                                    int horizon, double h_first, double h_final) {
  if (!(gamma >= budget.beta && gamma < 1.0)) throw std::invalid_argument("invalid exponent");
  const double T = static_cast<double>(horizon);
  const double path_term = std::sqrt(2.0 * subgrad_sq_bound * std::sqrt(diameter_sq_bound) *
                                     budget.d_beta * std::pow(T, 1.0 - budget.beta) /
                                     (1.0 - gamma));
  const double static_term =
      std::sqrt(subgrad_sq_bound * diameter_sq_bound * T / (4.0 * (1.0 - gamma)));
  return path_term + static_term + h_first - h_final;
}

double adversarial_regret_floor(const DynamicsBudget& budget, int horizon) {
  const double T = static_cast<double>(horizon);
  return std::sqrt(budget.d_beta * std::pow(T, 1.0 - budget.beta)) + std::sqrt(T);
}

double shift_to_path_budget(const ShiftBudget& budget, double diameter_sq_bound) {
  return static_cast<double>(budget.shifts) * std::sqrt(diameter_sq_bound);
}

double log_log_slope(const std::vector<std::pair<double, double>>& points) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) continue;
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2 || !(std::abs(denom) > 0.0))
    throw std::invalid_argument("slope needs at least two positive points");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace dynreg
