#pragma once

#include <Eigen/Core>

namespace dynreg {

enum class DomainKind { EuclideanBall, Box };

/// Feasible decision set X together with the two scalar constants every
/// guarantee in the library is stated in terms of:
///   diameter_sq_bound  R  with  sup_{x,y in X} ||x - y||^2 <= R
///   subgrad_sq_bound   G  with  sup ||g||^2 <= G over subgradients queried on X.
///
/// Both supported shapes admit exact Euclidean projections, so R is computed
/// exactly by the factories; G is declared by the caller for the loss family
/// they intend to play.  Instances are immutable value types.
struct DomainSpec {
  DomainKind kind = DomainKind::EuclideanBall;
  int dimension = 0;

  // EuclideanBall
  Eigen::VectorXd center;
  double radius = 0.0;

  // Box
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  double diameter_sq_bound = 0.0;
  double subgrad_sq_bound = 0.0;

  /// Canonical interior point: ball center, or box midpoint.
  Eigen::VectorXd center_point() const;
};

/// Ball {x : ||x - center|| <= radius}; R = (2*radius)^2.
/// Throws std::invalid_argument on radius <= 0, empty center, or G <= 0.
DomainSpec make_ball_domain(const Eigen::VectorXd& center, double radius,
                            double subgrad_sq_bound);

/// Box {x : lower <= x <= upper componentwise}; R = ||upper - lower||^2.
/// Throws std::invalid_argument on mismatched sizes, lower >= upper anywhere,
/// or G <= 0.
DomainSpec make_box_domain(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                           double subgrad_sq_bound);

}  // namespace dynreg
