#pragma once

#include <functional>
#include <optional>

#include <Eigen/Core>

#include "dynreg/prox.hpp"

namespace dynreg {

/// One round's composite loss f_t = F_t + H.  The smooth part F_t is exposed
/// through value and subgradient oracles; the shared nonsmooth part H rides
/// along as a Regularizer handled by proximal steps, never by subgradients.
/// Oracles must be pure functions of their argument.
class LossFunction {
 public:
  using ValueFn = std::function<double(const Eigen::VectorXd&)>;
  using SubgradFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

  LossFunction(ValueFn value, SubgradFn subgradient, Regularizer regularizer)
      : value_(std::move(value)),
        subgradient_(std::move(subgradient)),
        regularizer_(std::move(regularizer)) {}

  double smooth_value(const Eigen::VectorXd& x) const { return value_(x); }
  Eigen::VectorXd subgradient(const Eigen::VectorXd& x) const { return subgradient_(x); }
  const Regularizer& regularizer() const { return regularizer_; }

  /// Full composite value F_t(x) + H(x).
  double value(const Eigen::VectorXd& x) const {
    return value_(x) + regularizer_.value(x);
  }

  /// Set when the smooth part is exactly <v, .>; lets solvers take exact
  /// one-dimensional shortcuts.  Empty for every other loss.
  const std::optional<Eigen::VectorXd>& linear_coefficient() const {
    return linear_coefficient_;
  }

  friend LossFunction make_linear_loss(const Eigen::VectorXd&, Regularizer);

 private:
  ValueFn value_;
  SubgradFn subgradient_;
  Regularizer regularizer_;
  std::optional<Eigen::VectorXd> linear_coefficient_;
};

/// F(x) = <v, x>.
LossFunction make_linear_loss(const Eigen::VectorXd& v, Regularizer reg);

/// F(x) = <a, x> + (curvature/2) * ||x - anchor||^2.
LossFunction make_affine_quadratic_loss(const Eigen::VectorXd& a, double curvature,
                                        const Eigen::VectorXd& anchor, Regularizer reg);

/// F(x) = sum_i |x_i|, with the zero subgradient at kinks.
LossFunction make_abs_loss(int dimension, Regularizer reg);

}  // namespace dynreg
