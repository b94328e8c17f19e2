#pragma once

#include <Eigen/Core>

#include "dynreg/domain.hpp"

namespace dynreg {

enum class RegularizerKind { Zero, L1, IndicatorOfDomain };

/// Nonsmooth part H of a composite loss F_t + H, handled through its proximal
/// operator rather than subgradients.  H is defined on the domain X, where the
/// indicator contributes 0; value() therefore never returns infinity.
class Regularizer {
 public:
  static Regularizer zero() { return Regularizer(RegularizerKind::Zero, 0.0); }
  static Regularizer l1(double weight);
  static Regularizer indicator_of_domain() {
    return Regularizer(RegularizerKind::IndicatorOfDomain, 0.0);
  }

  RegularizerKind kind() const { return kind_; }
  double weight() const { return weight_; }

  /// H(x) for x in X: 0, weight*||x||_1, or 0.
  double value(const Eigen::VectorXd& x) const;

  /// A subgradient of H at x (interior view, ignoring the domain indicator);
  /// the L1 part uses the zero element at kinks.
  Eigen::VectorXd subgradient(const Eigen::VectorXd& x) const;

  friend bool operator==(const Regularizer& a, const Regularizer& b) {
    return a.kind_ == b.kind_ && a.weight_ == b.weight_;
  }

 private:
  Regularizer(RegularizerKind kind, double weight) : kind_(kind), weight_(weight) {}
  RegularizerKind kind_;
  double weight_;
};

/// Exact Euclidean projection onto X.
Eigen::VectorXd project(const DomainSpec& domain, const Eigen::VectorXd& z);

/// ||x - project(x)||, used by feasibility checks.
double membership_residual(const DomainSpec& domain, const Eigen::VectorXd& x);

/// Proximal map constrained to the domain:
///   prox(x') = argmin_{x in X} { H(x) + ||x - x'||^2 / (2*step) }.
/// Exact for Zero/IndicatorOfDomain (projection) and for L1 on a box
/// (soft-threshold then clamp); L1 on a ball solves the radial dual multiplier
/// by bisection to absolute tolerance 1e-12.
/// Throws std::invalid_argument("nonpositive step") when step <= 0.
Eigen::VectorXd prox(const Regularizer& reg, const DomainSpec& domain,
                     const Eigen::VectorXd& x_prime, double step);

}  // namespace dynreg
