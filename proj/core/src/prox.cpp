#include "dynreg/prox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dynreg {
namespace {

double soft_threshold(double v, double threshold) {
  if (v > threshold) return v - threshold;
  if (v < -threshold) return v + threshold;
  return 0.0;
}

// Stationary point of  weight*||x||_1 + ||x - x'||^2/(2*step) + (mu/2)*||x - c||^2,
// the inner problem of the radial dual for the ball-constrained L1 prox.
Eigen::VectorXd l1_ball_dual_point(const Eigen::VectorXd& x_prime, const Eigen::VectorXd& center,
                                   double step, double weight, double mu) {
  const double scale = 1.0 + step * mu;
  Eigen::VectorXd x(x_prime.size());
  for (Eigen::Index i = 0; i < x_prime.size(); ++i) {
    x[i] = soft_threshold((x_prime[i] + step * mu * center[i]) / scale,
                          step * weight / scale);
  }
  return x;
}

}  // namespace

Regularizer Regularizer::l1(double weight) {
  if (!(weight >= 0.0)) throw std::invalid_argument("l1 weight must be nonnegative");
  return Regularizer(RegularizerKind::L1, weight);
}

double Regularizer::value(const Eigen::VectorXd& x) const {
  if (kind_ == RegularizerKind::L1) return weight_ * x.lpNorm<1>();
  return 0.0;
}

Eigen::VectorXd Regularizer::subgradient(const Eigen::VectorXd& x) const {
  if (kind_ != RegularizerKind::L1) return Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    g[i] = x[i] > 0.0 ? weight_ : (x[i] < 0.0 ? -weight_ : 0.0);
  }
  return g;
}

Eigen::VectorXd project(const DomainSpec& domain, const Eigen::VectorXd& z) {
  if (z.size() != domain.dimension) throw std::invalid_argument("point dimension mismatch");
  if (domain.kind == DomainKind::EuclideanBall) {
    const Eigen::VectorXd offset = z - domain.center;
    const double dist = offset.norm();
    if (dist <= domain.radius) return z;
    return domain.center + (domain.radius / dist) * offset;
  }
  return z.cwiseMax(domain.lower).cwiseMin(domain.upper);
}

double membership_residual(const DomainSpec& domain, const Eigen::VectorXd& x) {
  return (x - project(domain, x)).norm();
}

Eigen::VectorXd prox(const Regularizer& reg, const DomainSpec& domain,
                     const Eigen::VectorXd& x_prime, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("nonpositive step");
  if (x_prime.size() != domain.dimension) throw std::invalid_argument("point dimension mismatch");

  if (reg.kind() != RegularizerKind::L1 || reg.weight() == 0.0) {
    return project(domain, x_prime);
  }

  if (domain.kind == DomainKind::Box) {
    // Separable problem: soft-threshold, then clamp each coordinate.
    Eigen::VectorXd x(x_prime.size());
    for (Eigen::Index i = 0; i < x_prime.size(); ++i) {
      x[i] = soft_threshold(x_prime[i], step * reg.weight());
    }
    return x.cwiseMax(domain.lower).cwiseMin(domain.upper);
  }

  // Ball: try the unconstrained minimizer first.
  Eigen::VectorXd x = l1_ball_dual_point(x_prime, domain.center, step, reg.weight(), 0.0);
  if ((x - domain.center).norm() <= domain.radius) return x;

  // The ball constraint is active; bisect the radial multiplier mu >= 0 on
  // ||x(mu) - center|| - radius, which decreases monotonically to -radius.
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    x = l1_ball_dual_point(x_prime, domain.center, step, reg.weight(), hi);
    if ((x - domain.center).norm() <= domain.radius) break;
    lo = hi;
    hi *= 2.0;
  }
  // Relative tolerance: the multiplier grows like 1/step, and an absolute gap
  // below one ulp of hi would leave the midpoint equal to an endpoint forever.
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    x = l1_ball_dual_point(x_prime, domain.center, step, reg.weight(), mid);
    if ((x - domain.center).norm() <= domain.radius) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return l1_ball_dual_point(x_prime, domain.center, step, reg.weight(), hi);
}

}  // namespace dynreg
