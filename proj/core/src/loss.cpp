#include "dynreg/loss.hpp"

namespace dynreg {

LossFunction make_linear_loss(const Eigen::VectorXd& v, Regularizer reg) {
  LossFunction loss(
      [v](const Eigen::VectorXd& x) { return v.dot(x); },
      [v](const Eigen::VectorXd&) { return v; },
      std::move(reg));
  loss.linear_coefficient_ = v;
  return loss;
}

LossFunction make_affine_quadratic_loss(const Eigen::VectorXd& a, double curvature,
                                        const Eigen::VectorXd& anchor, Regularizer reg) {
  return LossFunction(
      [a, curvature, anchor](const Eigen::VectorXd& x) {
        return a.dot(x) + 0.5 * curvature * (x - anchor).squaredNorm();
      },
      [a, curvature, anchor](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return a + curvature * (x - anchor);
      },
      std::move(reg));
}

LossFunction make_abs_loss(int dimension, Regularizer reg) {
  return LossFunction(
      [](const Eigen::VectorXd& x) { return x.lpNorm<1>(); },
      [dimension](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd g(dimension);
        for (Eigen::Index i = 0; i < x.size(); ++i) {
          g[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
        }
        return g;
      },
      std::move(reg));
}

}  // namespace dynreg
