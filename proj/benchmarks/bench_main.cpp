// Microbenchmarks for the hot paths: the online update loop, the proximal
// operator, the offline solvers, and the adversarial game utilities.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dynreg/adversary.hpp"
#include "dynreg/analysis.hpp"
#include "dynreg/loss.hpp"
#include "dynreg/oracle.hpp"
#include "dynreg/pog.hpp"
#include "dynreg/prox.hpp"
#include "dynreg/rng.hpp"
#include "dynreg/schedule.hpp"

namespace {

using namespace dynreg;

std::vector<LossFunction> sign_losses(int dimension, int horizon, std::uint64_t seed,
                                      const Regularizer& reg) {
  std::vector<LossFunction> losses;
  losses.reserve(horizon);
  for (int t = 1; t <= horizon; ++t) {
    Eigen::VectorXd v(dimension);
    for (int i = 0; i < dimension; ++i)
      v[i] = rademacher_sign(seed, static_cast<std::uint64_t>(t),
                             static_cast<std::uint64_t>(i));
    losses.push_back(make_linear_loss(v, reg));
  }
  return losses;
}

void BM_OnlineRun(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  const int dimension = static_cast<int>(state.range(1));
  const DomainSpec domain = make_ball_domain(Eigen::VectorXd::Zero(dimension), 1.0,
                                             static_cast<double>(dimension));
  const std::vector<LossFunction> losses =
      sign_losses(dimension, horizon, 7, Regularizer::zero());
  const Schedule schedule = make_dynamics_tuned_schedule(
      0.5, 0.0, 4.0, domain.diameter_sq_bound, domain.subgrad_sq_bound, horizon);
  for (auto _ : state) {
    const Trajectory trajectory = run_pog(
        [&losses](int t) { return losses[static_cast<std::size_t>(t - 1)]; }, schedule,
        domain);
    benchmark::DoNotOptimize(trajectory.final_point);
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}

void BM_ProxL1OnBall(benchmark::State& state) {
  const int dimension = static_cast<int>(state.range(0));
  const DomainSpec domain = make_ball_domain(Eigen::VectorXd::Zero(dimension), 1.0,
                                             static_cast<double>(dimension));
  const Regularizer reg = Regularizer::l1(0.3);
  Eigen::VectorXd point(dimension);
  for (int i = 0; i < dimension; ++i)
    point[i] = 2.0 * uniform01(3, 1, static_cast<std::uint64_t>(i)) - 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prox(reg, domain, point, 0.1));
  }
}

void BM_ExactOracle(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  const DomainSpec domain = make_ball_domain(Eigen::VectorXd::Zero(1), 1.0, 1.0);
  const std::vector<LossFunction> losses = sign_losses(1, horizon, 11, Regularizer::zero());
  const DynamicsBudget budget = make_dynamics_budget(0.0, 4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_offline(losses, domain, budget));
  }
}

void BM_SubgradientOracle(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  const DomainSpec domain = make_ball_domain(Eigen::VectorXd::Zero(2), 1.0, 2.0);
  const std::vector<LossFunction> losses = sign_losses(2, horizon, 13, Regularizer::zero());
  const DynamicsBudget budget = make_dynamics_budget(0.0, 2.0);
  OracleConfig config;
  config.max_iterations = 500;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_offline(losses, domain, budget, config));
  }
}

void BM_ComparatorGain(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const RademacherGame game =
        make_rademacher_game(1, horizon, make_dynamics_budget(0.0, 4.0), ++seed);
    benchmark::DoNotOptimize(comparator_gain(game));
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}

void BM_WalkExpectation(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(walk_expectation_closed_form(horizon));
  }
}

BENCHMARK(BM_OnlineRun)->Args({256, 1})->Args({1024, 1})->Args({1024, 16});
BENCHMARK(BM_ProxL1OnBall)->Arg(8)->Arg(64);
BENCHMARK(BM_ExactOracle)->Arg(64)->Arg(256);
BENCHMARK(BM_SubgradientOracle)->Arg(32);
BENCHMARK(BM_ComparatorGain)->Arg(1024)->Arg(4096);
BENCHMARK(BM_WalkExpectation)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
