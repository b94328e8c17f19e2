#include "dynreg/adversary.hpp"

#include <cmath>
#include <stdexcept>

#include "dynreg/analysis.hpp"
#include "dynreg/rng.hpp"

namespace dynreg {
namespace {

Eigen::VectorXd best_response(const Eigen::VectorXd& stretch_sum) {
  const double norm = stretch_sum.norm();
  if (norm == 0.0) return Eigen::VectorXd::Zero(stretch_sum.size());
  return (0.5 / norm) * stretch_sum;
}

}  // namespace

RademacherGame make_rademacher_game(int dimension, int horizon, const DynamicsBudget& budget,
                                    std::uint64_t seed) {
  if (dimension < 1) throw std::invalid_argument("dimension must be positive");
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  RademacherGame game;
  game.dimension = dimension;
  game.horizon = horizon;
  game.budget = budget;
  game.seed = seed;
  game.loss_matrix.resize(dimension, horizon);
  for (int t = 1; t <= horizon; ++t) {
    for (int i = 0; i < dimension; ++i) {
      game.loss_matrix(i, t - 1) = rademacher_sign(seed, t, i);
    }
  }
  game.domain = make_ball_domain(Eigen::VectorXd::Zero(dimension), 1.0,
                                 static_cast<double>(dimension));
  return game;
}

BlockComparatorPlan plan_blocks(const RademacherGame& game) {
  BlockComparatorPlan plan;
  plan.first_half = game.horizon / 2;
  plan.second_half = game.horizon - plan.first_half;

  int blocks = 1;
  if (plan.first_half > 0 && game.budget.d_beta > 0.0) {
    const double half_weight = std::pow(static_cast<double>(plan.first_half), game.budget.beta);
    blocks = static_cast<int>(std::ceil(game.budget.d_beta / half_weight));
    blocks = std::max(blocks, 1);
    if (blocks > plan.first_half) {
      blocks = plan.first_half;
      plan.clamped = true;
    }
  }
  plan.block_count = blocks;

  const int block_length = blocks > 1 ? plan.first_half / blocks : 0;
  plan.stretch_start.reserve(blocks);
  plan.stretch_value.reserve(blocks);
  for (int i = 0; i < blocks; ++i) {
    const int start = i * block_length + 1;  // 1-indexed
    const int end = (i + 1 < blocks) ? (i + 1) * block_length : game.horizon;
    plan.stretch_start.push_back(start);
    const Eigen::VectorXd stretch_sum =
        game.loss_matrix.middleCols(start - 1, end - start + 1).rowwise().sum();
    plan.stretch_value.push_back(best_response(stretch_sum));
  }
  return plan;
}

ComparatorSequence build_comparator(const RademacherGame& game) {
  const BlockComparatorPlan plan = plan_blocks(game);
  std::vector<Eigen::VectorXd> points;
  points.reserve(game.horizon);
  for (std::size_t i = 0; i < plan.stretch_value.size(); ++i) {
    const int start = plan.stretch_start[i];
    const int end = (i + 1 < plan.stretch_start.size()) ? plan.stretch_start[i + 1] - 1
                                                        : game.horizon;
    for (int t = start; t <= end; ++t) points.push_back(plan.stretch_value[i]);
  }
  return ComparatorSequence::from_points(std::move(points), game.budget.beta);
}

double comparator_gain(const RademacherGame& game) {
  const BlockComparatorPlan plan = plan_blocks(game);
  double gain = 0.0;
  for (std::size_t i = 0; i < plan.stretch_value.size(); ++i) {
    const int start = plan.stretch_start[i];
    const int end = (i + 1 < plan.stretch_start.size()) ? plan.stretch_start[i + 1] - 1
                                                        : game.horizon;
    const Eigen::VectorXd stretch_sum =
        game.loss_matrix.middleCols(start - 1, end - start + 1).rowwise().sum();
    gain += stretch_sum.dot(plan.stretch_value[i]);
  }
  return gain;
}

RegretReport play_game(const RademacherGame& game, OnlineLearner& learner) {
  const Regularizer none = Regularizer::zero();
  const RademacherGame* g = &game;
  const LossStream stream = [g, none](int t) {
    return LossFunction(
        [g, t](const Eigen::VectorXd& x) { return g->loss_vector(t).dot(x); },
        [g, t](const Eigen::VectorXd&) -> Eigen::VectorXd { return g->loss_vector(t); },
        none);
  };
  const Trajectory trajectory = run_online(learner, stream, game.horizon);

  double learner_loss = 0.0;
  for (const double value : trajectory.losses) learner_loss += value;

  // The loss-minimizing comparator is the negated gain maximizer, so its
  // cumulative loss is exactly -gain.
  RegretReport report;
  report.dynamic_regret = learner_loss + comparator_gain(game);
  report.theory_lower = adversarial_regret_floor(game.budget, game.horizon);
  report.parameters.horizon = game.horizon;
  report.parameters.dimension = game.dimension;
  report.parameters.beta = game.budget.beta;
  report.parameters.d_beta = game.budget.d_beta;
  report.parameters.diameter_sq_bound = game.domain.diameter_sq_bound;
  report.parameters.subgrad_sq_bound = game.domain.subgrad_sq_bound;
  return report;
}

}  // namespace dynreg
