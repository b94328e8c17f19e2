#include "dynreg/domain.hpp"

#include <stdexcept>

namespace dynreg {

Eigen::VectorXd DomainSpec::center_point() const {
  if (kind == DomainKind::EuclideanBall) return center;
  return 0.5 * (lower + upper);
}

DomainSpec make_ball_domain(const Eigen::VectorXd& center, double radius,
                            double subgrad_sq_bound) {
  if (center.size() == 0) throw std::invalid_argument("domain dimension must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  if (!(subgrad_sq_bound > 0.0)) throw std::invalid_argument("subgradient bound must be positive");
  DomainSpec d;
  d.kind = DomainKind::EuclideanBall;
  d.dimension = static_cast<int>(center.size());
  d.center = center;
  d.radius = radius;
  d.diameter_sq_bound = 4.0 * radius * radius;
  d.subgrad_sq_bound = subgrad_sq_bound;
  return d;
}

DomainSpec make_box_domain(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                           double subgrad_sq_bound) {
  if (lower.size() == 0) throw std::invalid_argument("domain dimension must be positive");
  if (lower.size() != upper.size()) throw std::invalid_argument("box bounds must have equal size");
  if (!((upper.array() > lower.array()).all()))
    throw std::invalid_argument("box upper bound must exceed lower bound");
  if (!(subgrad_sq_bound > 0.0)) throw std::invalid_argument("subgradient bound must be positive");
  DomainSpec d;
  d.kind = DomainKind::Box;
  d.dimension = static_cast<int>(lower.size());
  d.lower = lower;
  d.upper = upper;
  d.diameter_sq_bound = (upper - lower).squaredNorm();
  d.subgrad_sq_bound = subgrad_sq_bound;
  return d;
}

}  // namespace dynreg
