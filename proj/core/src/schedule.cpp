#include "dynreg/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace dynreg {

double Schedule::at(int t) const {
  if (t < 1) throw std::invalid_argument("schedule index must be positive");
  return base_ * std::pow(static_cast<double>(t), -gamma_);
}

double Schedule::sum() const {
  double total = 0.0;
  for (int t = 1; t <= horizon_; ++t) total += at(t);
  return total;
}

Schedule Schedule::constant(double eta, int horizon) {
  if (!(eta > 0.0)) throw std::invalid_argument("step size must be positive");
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  return Schedule(Kind::Constant, eta, 0.0, horizon);
}

Schedule make_dynamics_tuned_schedule(double gamma, double beta, double d_beta,
                                      double diameter_sq_bound, double subgrad_sq_bound,
                                      int horizon) {
  if (!(beta >= 0.0 && gamma >= beta && gamma < 1.0))
    throw std::invalid_argument("invalid exponent");
  if (!(d_beta >= 0.0)) throw std::invalid_argument("path budget must be nonnegative");
  if (!(diameter_sq_bound > 0.0)) throw std::invalid_argument("diameter bound must be positive");
  if (!(subgrad_sq_bound > 0.0)) throw std::invalid_argument("subgradient bound must be positive");
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  const double T = static_cast<double>(horizon);
  const double base = std::sqrt(
      (1.0 - gamma) *
      (2.0 * std::sqrt(diameter_sq_bound) * std::pow(T, 2.0 * gamma - beta - 1.0) * d_beta +
       diameter_sq_bound * std::pow(T, 2.0 * gamma - 1.0)) /
      subgrad_sq_bound);
  return Schedule(Schedule::Kind::DynamicsTuned, base, gamma, horizon);
}

Schedule make_shift_tuned_schedule(double gamma, int shifts, double diameter_sq_bound,
                                   double subgrad_sq_bound, int horizon) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("invalid exponent");
  if (shifts < 0) throw std::invalid_argument("shift budget must be nonnegative");
  if (!(diameter_sq_bound > 0.0)) throw std::invalid_argument("diameter bound must be positive");
  if (!(subgrad_sq_bound > 0.0)) throw std::invalid_argument("subgradient bound must be positive");
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  const double T = static_cast<double>(horizon);
  const double base = std::sqrt(
      (1.0 - gamma) *
      (2.0 * diameter_sq_bound * std::pow(T, 2.0 * gamma - 1.0) * shifts +
       diameter_sq_bound * std::pow(T, 2.0 * gamma - 1.0)) /
      subgrad_sq_bound);
  return Schedule(Schedule::Kind::ShiftTuned, base, gamma, horizon);
}

}  // namespace dynreg
