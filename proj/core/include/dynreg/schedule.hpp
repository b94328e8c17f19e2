#pragma once

namespace dynreg {

/// Step-size sequence eta_t = base * t^(-gamma), t = 1..horizon.  All supported
/// schedules are positive and non-increasing, which the update's guarantee
/// requires.
class Schedule {
 public:
  enum class Kind { Constant, DynamicsTuned, ShiftTuned };

  /// eta_t; t is 1-indexed.  Throws std::invalid_argument for t < 1.
  double at(int t) const;

  /// sum_{t=1}^{horizon} eta_t.
  double sum() const;

  Kind kind() const { return kind_; }
  int horizon() const { return horizon_; }
  double gamma() const { return gamma_; }

  static Schedule constant(double eta, int horizon);

  friend Schedule make_dynamics_tuned_schedule(double, double, double, double, double, int);
  friend Schedule make_shift_tuned_schedule(double, int, double, double, int);

 private:
  Schedule(Kind kind, double base, double gamma, int horizon)
      : kind_(kind), base_(base), gamma_(gamma), horizon_(horizon) {}
  Kind kind_;
  double base_;
  double gamma_;
  int horizon_;
};

/// Schedule tuned to a path-length budget:
///   eta_t = t^(-gamma) * sqrt((1-gamma) * (2*sqrt(R)*T^(2*gamma-beta-1)*d_beta
///                                          + R*T^(2*gamma-1)) / G).
/// Requires 0 <= beta <= gamma < 1 (throws "invalid exponent" otherwise),
/// R > 0, G > 0, d_beta >= 0, horizon >= 1.
Schedule make_dynamics_tuned_schedule(double gamma, double beta, double d_beta,
                                      double diameter_sq_bound, double subgrad_sq_bound,
                                      int horizon);

/// Schedule tuned to a shift budget, the beta = 0 specialization with the shift
/// budget converted to a path budget of shifts * sqrt(R):
///   eta_t = t^(-gamma) * sqrt((1-gamma) * (2*R*T^(2*gamma-1)*shifts
///                                          + R*T^(2*gamma-1)) / G).
Schedule make_shift_tuned_schedule(double gamma, int shifts, double diameter_sq_bound,
                                   double subgrad_sq_bound, int horizon);

}  // namespace dynreg
