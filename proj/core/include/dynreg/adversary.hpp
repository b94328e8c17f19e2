#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dynreg/metrics.hpp"
#include "dynreg/pog.hpp"
#include "dynreg/sequence.hpp"

namespace dynreg {

/// The oblivious linear game the lower bound is played on: F_t(x) = <v_t, x>
/// with v_t drawn i.i.d. uniform from {-1, +1}^d ahead of time, H = 0, and the
/// unit ball as the domain (so R = 4 and ||v_t||^2 = d = G exactly).  The
/// sequence is a pure function of the seed through a counter-based generator,
/// so games replay exactly and can be generated in any order.
struct RademacherGame {
  int dimension = 0;
  int horizon = 0;
  DynamicsBudget budget;
  std::uint64_t seed = 0;
  Eigen::MatrixXd loss_matrix;  // column t-1 holds v_t
  DomainSpec domain;

  Eigen::MatrixXd::ConstColXpr loss_vector(int t) const { return loss_matrix.col(t - 1); }
};

RademacherGame make_rademacher_game(int dimension, int horizon, const DynamicsBudget& budget,
                                    std::uint64_t seed);

/// Shape of the feasible comparator the lower-bound proof plays: the first
/// half (T1 = floor(T/2) rounds) is cut into N = ceil(d_beta / T1^beta) blocks
/// whose last block absorbs the remainder, and the final block's stretch runs
/// on through the entire second half.  Each stretch holds one constant value
/// of norm <= 1/2, so the N-1 value changes all happen in the first half and
/// the weighted path length telescopes to at most T1^beta * (N-1) <= d_beta.
struct BlockComparatorPlan {
  int first_half = 0;                         // T1
  int second_half = 0;                        // T2
  int block_count = 0;                        // N
  bool clamped = false;                       // N hit the first-half length
  std::vector<int> stretch_start;             // 1-indexed first round per stretch
  std::vector<Eigen::VectorXd> stretch_value; // one value per stretch
};

BlockComparatorPlan plan_blocks(const RademacherGame& game);

/// Expands the plan to per-round points.  Each stretch's value is the
/// best response at radius 1/2 to the stretch's own aggregated loss vectors:
/// u = (1/2) * s / ||s|| for stretch sum s (zero when the sum vanishes), the
/// maximizer of <s, u> over ||u|| <= 1/2.  The returned sequence maximizes the
/// gain below; its pointwise negation is the loss-minimizing comparator the
/// regret is measured against.
ComparatorSequence build_comparator(const RademacherGame& game);

/// sum_t <v_t, y_t> for the constructed comparator: the certificate quantity
/// whose expectation grows like sqrt(d_beta * T^(1-beta)) + sqrt(T).
double comparator_gain(const RademacherGame& game);

/// Runs the online protocol on the game's losses and measures dynamic regret
/// against the negated constructed comparator.  Fills dynamic_regret,
/// theory_lower (the adversarial floor), and the parameter block.
RegretReport play_game(const RademacherGame& game, OnlineLearner& learner);

}  // namespace dynreg
