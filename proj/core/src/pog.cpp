#include "dynreg/pog.hpp"

#include <stdexcept>

namespace dynreg {

Eigen::VectorXd pog_step(const Eigen::VectorXd& x_t, const LossFunction& loss, double eta,
                         const DomainSpec& domain) {
  if (!(eta > 0.0)) throw std::invalid_argument("nonpositive step");
  const Eigen::VectorXd g = loss.subgradient(x_t);
  if (g.size() != x_t.size() || !g.allFinite()) throw std::invalid_argument("bad oracle");
  return prox(loss.regularizer(), domain, x_t - eta * g, eta);
}

ProximalGradientLearner::ProximalGradientLearner(DomainSpec domain, Schedule schedule,
                                                 std::optional<Eigen::VectorXd> start)
    : domain_(std::move(domain)), schedule_(std::move(schedule)) {
  point_ = start.has_value() ? project(domain_, *start) : domain_.center_point();
}

void ProximalGradientLearner::observe(int t, const LossFunction& loss) {
  if (!regularizer_.has_value()) {
    regularizer_ = loss.regularizer();
  } else if (!(*regularizer_ == loss.regularizer())) {
    throw std::invalid_argument("regularizer must be shared across the run");
  }
  point_ = pog_step(point_, loss, schedule_.at(t), domain_);
}

Trajectory run_online(OnlineLearner& learner, const LossStream& stream, int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  Trajectory trajectory;
  trajectory.horizon = horizon;
  trajectory.decisions.reserve(horizon);
  trajectory.losses.reserve(horizon);
  for (int t = 1; t <= horizon; ++t) {
    Eigen::VectorXd x = learner.predict(t);
    const LossFunction loss = stream(t);
    trajectory.decisions.push_back(std::move(x));
    trajectory.losses.push_back(loss.value(trajectory.decisions.back()));
    learner.observe(t, loss);
  }
  trajectory.final_point = learner.predict(horizon + 1);
  return trajectory;
}

Trajectory run_pog(const LossStream& stream, const Schedule& schedule, const DomainSpec& domain,
                   std::optional<Eigen::VectorXd> start) {
  ProximalGradientLearner learner(domain, schedule, std::move(start));
  return run_online(learner, stream, schedule.horizon());
}

}  // namespace dynreg
