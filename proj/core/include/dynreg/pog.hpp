#pragma once

#include <functional>
#include <optional>

#include "dynreg/loss.hpp"
#include "dynreg/schedule.hpp"
#include "dynreg/sequence.hpp"

namespace dynreg {

/// Supplies round t's loss.  The runner calls it only after the round's
/// decision is fixed, which is what makes the protocol online.
using LossStream = std::function<LossFunction(int t)>;

/// One proximal online gradient update:
///   x_{t+1} = prox_{H, eta}(x_t - eta * g),  g = loss.subgradient(x_t),
/// with the prox constrained to the domain.  Throws
/// std::invalid_argument("bad oracle") if the subgradient is non-finite and
/// std::invalid_argument("nonpositive step") if eta <= 0.
Eigen::VectorXd pog_step(const Eigen::VectorXd& x_t, const LossFunction& loss, double eta,
                         const DomainSpec& domain);

/// Anyone who can play the online protocol: commit to a decision, then see the
/// loss.
class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;
  virtual Eigen::VectorXd predict(int t) = 0;
  virtual void observe(int t, const LossFunction& loss) = 0;
};

/// Proximal online gradient descent against a step-size schedule.
class ProximalGradientLearner : public OnlineLearner {
 public:
  ProximalGradientLearner(DomainSpec domain, Schedule schedule,
                          std::optional<Eigen::VectorXd> start = std::nullopt);

  Eigen::VectorXd predict(int t) override { return point_; }
  void observe(int t, const LossFunction& loss) override;

  const Eigen::VectorXd& current_point() const { return point_; }

 private:
  DomainSpec domain_;
  Schedule schedule_;
  Eigen::VectorXd point_;
  std::optional<Regularizer> regularizer_;
};

/// Plays one fixed point forever; the all-zeros instance is the reference
/// learner in the adversarial lower-bound experiments.
class FixedPointLearner : public OnlineLearner {
 public:
  explicit FixedPointLearner(Eigen::VectorXd point) : point_(std::move(point)) {}
  Eigen::VectorXd predict(int t) override { return point_; }
  void observe(int, const LossFunction&) override {}

 private:
  Eigen::VectorXd point_;
};

/// Runs the protocol for `horizon` rounds: decisions are requested before each
/// round's loss is drawn from the stream, and the recorded loss is the full
/// composite value f_t(x_t).
Trajectory run_online(OnlineLearner& learner, const LossStream& stream, int horizon);

/// Convenience wrapper running ProximalGradientLearner over the schedule's
/// horizon.  The start point defaults to the domain's center point.  Every
/// round's regularizer must equal the first round's (the guarantee is stated
/// for one shared H); a mismatch throws std::invalid_argument.
Trajectory run_pog(const LossStream& stream, const Schedule& schedule, const DomainSpec& domain,
                   std::optional<Eigen::VectorXd> start = std::nullopt);

}  // namespace dynreg
