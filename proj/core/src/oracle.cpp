#include "dynreg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dynreg/prox.hpp"

namespace dynreg {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double transition_weight(int t, double beta) {
  return std::pow(static_cast<double>(t), beta);
}

double matrix_path_length(const MatrixXd& y, double beta) {
  double total = 0.0;
  for (int t = 0; t + 1 < y.cols(); ++t) {
    total += transition_weight(t + 1, beta) * (y.col(t + 1) - y.col(t)).norm();
  }
  return total;
}

std::vector<VectorXd> matrix_to_points(const MatrixXd& y) {
  std::vector<VectorXd> points;
  points.reserve(y.cols());
  for (int t = 0; t < y.cols(); ++t) points.push_back(y.col(t));
  return points;
}

// ---------------------------------------------------------------------------
// Weighted total-variation machinery for the projected-subgradient method.
// ---------------------------------------------------------------------------

// prox of mu * sum_t w_t ||y_{t+1} - y_t|| at z, solved through its dual: a
// ball-constrained quadratic in one variable per transition, by accelerated
// projected gradient with warm starts.
class TvProx {
 public:
  TvProx(int dimension, int horizon, double beta, int iterations)
      : beta_(beta), iterations_(iterations), dual_(MatrixXd::Zero(dimension, horizon - 1)) {}

  MatrixXd apply(const MatrixXd& z, double mu) {
    const int transitions = static_cast<int>(z.cols()) - 1;
    if (transitions <= 0) return z;
    MatrixXd q = dual_;
    clamp_dual(q, mu);
    MatrixXd momentum = q;
    MatrixXd previous = q;
    double t_k = 1.0;
    for (int k = 0; k < iterations_; ++k) {
      MatrixXd y = z - divergence(momentum);
      // gradient of the dual objective is minus the forward difference of y
      MatrixXd grad(q.rows(), transitions);
      for (int t = 0; t < transitions; ++t) grad.col(t) = -(y.col(t + 1) - y.col(t));
      q = momentum - 0.25 * grad;
      clamp_dual(q, mu);
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_k * t_k));
      momentum = q + ((t_k - 1.0) / t_next) * (q - previous);
      const double change = (q - previous).cwiseAbs().maxCoeff();
      previous = q;
      t_k = t_next;
      if (change < 1e-13) break;
    }
    dual_ = q;
    return z - divergence(q);
  }

 private:
  void clamp_dual(MatrixXd& q, double mu) const {
    for (int t = 0; t < q.cols(); ++t) {
      const double cap = mu * transition_weight(t + 1, beta_);
      const double norm = q.col(t).norm();
      if (norm > cap) q.col(t) *= (cap > 0.0 ? cap / norm : 0.0);
    }
  }

  // adjoint of the forward difference: (div q)_t = q_{t-1} - q_t.
  MatrixXd divergence(const MatrixXd& q) const {
    MatrixXd out(q.rows(), q.cols() + 1);
    out.col(0) = -q.col(0);
    for (int t = 1; t < q.cols(); ++t) out.col(t) = q.col(t - 1) - q.col(t);
    out.col(q.cols()) = q.col(q.cols() - 1);
    return out;
  }

  double beta_;
  int iterations_;
  MatrixXd dual_;
};

// Dykstra alternation between the weighted-path ball and the product domain,
// with a final exact rescale so every returned sequence is feasible.
class BudgetProjector {
 public:
  BudgetProjector(const DomainSpec& domain, const DynamicsBudget& budget, int horizon,
                  const OracleConfig& config)
      : domain_(domain),
        budget_(budget),
        config_(config),
        tv_prox_(domain.dimension, horizon, budget.beta, config.tv_prox_iterations),
        mu_guess_(1.0) {}

  void project(MatrixXd& y) {
    MatrixXd x = y;
    MatrixXd p = MatrixXd::Zero(y.rows(), y.cols());
    MatrixXd q = MatrixXd::Zero(y.rows(), y.cols());
    for (int round = 0; round < config_.dykstra_rounds; ++round) {
      MatrixXd u = path_ball_project(x + p);
      p = x + p - u;
      MatrixXd v = domain_project(u + q);
      q = u + q - v;
      const double change = (v - x).cwiseAbs().maxCoeff();
      x = v;
      if (change < 1e-11) break;
    }
    snap_to_budget(x);
    y = x;
  }

 private:
  MatrixXd domain_project(const MatrixXd& z) const {
    MatrixXd out(z.rows(), z.cols());
    for (int t = 0; t < z.cols(); ++t) out.col(t) = dynreg::project(domain_, z.col(t));
    return out;
  }

  MatrixXd path_ball_project(const MatrixXd& z) {
    if (budget_.d_beta <= 0.0) {
      // Degenerate ball: only constant sequences, and the nearest one sits at
      // the column mean.
      MatrixXd out(z.rows(), z.cols());
      const VectorXd mean = z.rowwise().mean();
      for (int t = 0; t < z.cols(); ++t) out.col(t) = mean;
      return out;
    }
    if (matrix_path_length(z, budget_.beta) <= budget_.d_beta) return z;
    double lo = 0.0;
    double hi = std::max(mu_guess_, 1e-6);
    MatrixXd candidate;
    for (int i = 0; i < 240; ++i) {
      candidate = tv_prox_.apply(z, hi);
      if (matrix_path_length(candidate, budget_.beta) <= budget_.d_beta) break;
      lo = hi;
      hi *= 2.0;
    }
    MatrixXd feasible = candidate;
    while (hi - lo > config_.multiplier_tol) {
      const double mid = 0.5 * (lo + hi);
      candidate = tv_prox_.apply(z, mid);
      if (matrix_path_length(candidate, budget_.beta) <= budget_.d_beta) {
        hi = mid;
        feasible = candidate;
      } else {
        lo = mid;
      }
    }
    mu_guess_ = hi;
    return feasible;
  }

  // Rescales increments about the first point; a convex combination of domain
  // members, so domain feasibility survives and the path shrinks to budget.
  void snap_to_budget(MatrixXd& x) const {
    const double path = matrix_path_length(x, budget_.beta);
    if (path <= budget_.d_beta) return;
    const double theta =
        budget_.d_beta > 0.0 ? (budget_.d_beta / path) * (1.0 - 1e-12) : 0.0;
    for (int t = 1; t < x.cols(); ++t) {
      x.col(t) = (1.0 - theta) * x.col(0) + theta * x.col(t);
    }
  }

  DomainSpec domain_;
  DynamicsBudget budget_;
  OracleConfig config_;
  TvProx tv_prox_;
  double mu_guess_;
};

double sequence_objective(const std::vector<LossFunction>& losses, const MatrixXd& y) {
  double total = 0.0;
  for (std::size_t t = 0; t < losses.size(); ++t) {
    total += losses[t].value(y.col(static_cast<int>(t)));
  }
  return total;
}

OracleSolution solve_by_subgradient(const std::vector<LossFunction>& losses,
                                    const DomainSpec& domain, const DynamicsBudget& budget,
                                    const OracleConfig& config) {
  const int horizon = static_cast<int>(losses.size());
  const int cap = config.max_iterations > 0 ? config.max_iterations : 50 * horizon;
  const double scale =
      config.step_scale > 0.0
          ? config.step_scale
          : std::sqrt(domain.diameter_sq_bound / domain.subgrad_sq_bound);

  MatrixXd y(domain.dimension, horizon);
  const VectorXd start = domain.center_point();
  for (int t = 0; t < horizon; ++t) y.col(t) = start;

  BudgetProjector projector(domain, budget, horizon, config);
  MatrixXd best = y;
  double best_objective = sequence_objective(losses, y);
  double window_anchor = best_objective;
  double recent_improvement = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;

  MatrixXd grad(domain.dimension, horizon);
  for (int k = 1; k <= cap; ++k) {
    iterations = k;
    for (int t = 0; t < horizon; ++t) {
      grad.col(t) = losses[t].subgradient(y.col(t)) +
                    losses[t].regularizer().subgradient(y.col(t));
    }
    y -= (scale / std::sqrt(static_cast<double>(k))) * grad;
    projector.project(y);
    const double objective = sequence_objective(losses, y);
    if (objective < best_objective) {
      best_objective = objective;
      best = y;
    }
    if (k % 100 == 0) {
      recent_improvement = window_anchor - best_objective;
      window_anchor = best_objective;
      if (recent_improvement < config.objective_tol * std::max(1.0, std::abs(best_objective))) {
        converged = true;
        break;
      }
    }
  }

  OracleSolution solution;
  solution.comparator = ComparatorSequence::from_points(matrix_to_points(best), budget.beta);
  solution.objective = best_objective;
  solution.method = OracleMethod::ProjectedSubgradient;
  solution.iterations = iterations;
  solution.constraint_slack = budget.d_beta - solution.comparator.weighted_path_length();
  solution.recent_improvement = recent_improvement;
  solution.converged = converged;
  return solution;
}

// ---------------------------------------------------------------------------
// Exact one-dimensional solver: dual bisection over the path multiplier with a
// dynamic program over convex piecewise-linear stage costs.
// ---------------------------------------------------------------------------

struct Kink {
  double pos;
  double delta;  // slope increase at pos
};

// Convex piecewise-linear function on [lo, hi], tracked through its derivative:
// slope_left on the first segment, then +delta at each kink left to right.
struct PiecewiseLinear {
  std::deque<Kink> kinks;
  double slope_left = 0.0;
  double delta_sum = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  void add_linear(double slope) { slope_left += slope; }

  void add_abs(double weight) {
    if (weight <= 0.0) return;
    if (lo >= 0.0) {
      slope_left += weight;
      return;
    }
    if (hi <= 0.0) {
      slope_left -= weight;
      return;
    }
    slope_left -= weight;
    const auto it = std::lower_bound(
        kinks.begin(), kinks.end(), 0.0,
        [](const Kink& k, double value) { return k.pos < value; });
    if (it != kinks.end() && it->pos == 0.0) {
      it->delta += 2.0 * weight;
    } else {
      kinks.insert(it, Kink{0.0, 2.0 * weight});
    }
    delta_sum += 2.0 * weight;
  }

  // Replaces the function by its infimal convolution with a*|.|, i.e. clips the
  // derivative to [-a, a]; reports the window outside which the optimal
  // predecessor saturates.
  void clip(double a, double& window_lo, double& window_hi) {
    window_lo = lo;
    if (slope_left < -a) {
      window_lo = hi;
      while (!kinks.empty()) {
        const double next = slope_left + kinks.front().delta;
        if (next >= -a) {
          window_lo = kinks.front().pos;
          const double residual = next + a;
          delta_sum -= kinks.front().delta;
          kinks.pop_front();
          if (residual > 0.0) {
            kinks.push_front(Kink{window_lo, residual});
            delta_sum += residual;
          }
          break;
        }
        slope_left = next;
        delta_sum -= kinks.front().delta;
        kinks.pop_front();
      }
      slope_left = -a;
    }
    window_hi = hi;
    double slope_right = slope_left + delta_sum;
    if (slope_right > a) {
      window_hi = lo;
      while (!kinks.empty()) {
        const double before = slope_right - kinks.back().delta;
        if (before <= a) {
          window_hi = kinks.back().pos;
          const double residual = a - before;
          delta_sum -= kinks.back().delta;
          kinks.pop_back();
          if (residual > 0.0) {
            kinks.push_back(Kink{window_hi, residual});
            delta_sum += residual;
          }
          break;
        }
        slope_right = before;
        delta_sum -= kinks.back().delta;
        kinks.pop_back();
      }
      if (kinks.empty() && slope_left > a) slope_left = a;
    }
  }

  double argmin() const {
    if (slope_left >= 0.0) return lo;
    double slope = slope_left;
    for (const Kink& kink : kinks) {
      slope += kink.delta;
      if (slope >= 0.0) return kink.pos;
    }
    return hi;
  }
};

struct LinearStage {
  double slope;      // coefficient of y
  double l1_weight;  // coefficient of |y|
};

struct DpInstance {
  std::vector<LinearStage> stages;
  double lo = 0.0;
  double hi = 0.0;
  double beta = 0.0;
  double d_beta = 0.0;
};

std::vector<double> run_dp(const DpInstance& instance, double mu) {
  const int horizon = static_cast<int>(instance.stages.size());
  PiecewiseLinear message;
  message.lo = instance.lo;
  message.hi = instance.hi;
  message.add_linear(instance.stages[0].slope);
  message.add_abs(instance.stages[0].l1_weight);

  std::vector<double> window_lo(horizon + 1), window_hi(horizon + 1);
  for (int t = 2; t <= horizon; ++t) {
    message.clip(mu * transition_weight(t - 1, instance.beta), window_lo[t], window_hi[t]);
    message.add_linear(instance.stages[t - 1].slope);
    message.add_abs(instance.stages[t - 1].l1_weight);
  }

  std::vector<double> y(horizon);
  y[horizon - 1] = message.argmin();
  for (int t = horizon - 1; t >= 1; --t) {
    y[t - 1] = std::clamp(y[t], window_lo[t + 1], window_hi[t + 1]);
  }
  return y;
}

double dp_path_length(const DpInstance& instance, const std::vector<double>& y) {
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < y.size(); ++t) {
    total += transition_weight(static_cast<int>(t) + 1, instance.beta) * std::abs(y[t + 1] - y[t]);
  }
  return total;
}

double dp_objective(const DpInstance& instance, const std::vector<double>& y) {
  double total = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    total += instance.stages[t].slope * y[t] + instance.stages[t].l1_weight * std::abs(y[t]);
  }
  return total;
}

OracleSolution finish_dp_solution(const DpInstance& instance, const std::vector<double>& y,
                                  int iterations, bool converged) {
  std::vector<VectorXd> points;
  points.reserve(y.size());
  for (const double value : y) {
    VectorXd point(1);
    point[0] = value;
    points.push_back(std::move(point));
  }
  OracleSolution solution;
  solution.comparator = ComparatorSequence::from_points(std::move(points), instance.beta);
  solution.objective = dp_objective(instance, y);
  solution.method = OracleMethod::DualPathDp;
  solution.iterations = iterations;
  solution.constraint_slack = instance.d_beta - solution.comparator.weighted_path_length();
  solution.recent_improvement = 0.0;
  solution.converged = converged;
  return solution;
}

OracleSolution solve_by_dual_dp(const DpInstance& instance, const OracleConfig& config) {
  const int horizon = static_cast<int>(instance.stages.size());
  if (instance.d_beta <= 0.0 || horizon == 1) {
    // Constant sequences only: minimize the aggregated stage cost directly.
    PiecewiseLinear total;
    total.lo = instance.lo;
    total.hi = instance.hi;
    for (const LinearStage& stage : instance.stages) {
      total.add_linear(stage.slope);
      total.add_abs(stage.l1_weight);
    }
    return finish_dp_solution(instance, std::vector<double>(horizon, total.argmin()), 1, true);
  }

  int evaluations = 1;
  std::vector<double> unconstrained = run_dp(instance, 0.0);
  if (dp_path_length(instance, unconstrained) <= instance.d_beta) {
    return finish_dp_solution(instance, unconstrained, evaluations, true);
  }

  double mu_lo = 0.0;
  double mu_hi = 1.0;
  std::vector<double> y_lo = std::move(unconstrained);
  std::vector<double> y_hi;
  for (int i = 0; i < 200; ++i) {
    ++evaluations;
    y_hi = run_dp(instance, mu_hi);
    if (dp_path_length(instance, y_hi) <= instance.d_beta) break;
    mu_lo = mu_hi;
    y_lo = y_hi;
    mu_hi *= 2.0;
  }
  while (mu_hi - mu_lo > 1e-12 * std::max(1.0, mu_hi)) {
    ++evaluations;
    const double mid = 0.5 * (mu_lo + mu_hi);
    std::vector<double> candidate = run_dp(instance, mid);
    if (dp_path_length(instance, candidate) <= instance.d_beta) {
      mu_hi = mid;
      y_hi = std::move(candidate);
    } else {
      mu_lo = mid;
      y_lo = std::move(candidate);
    }
  }

  // Blend across the bracket so the path constraint is met exactly; both
  // endpoints minimize nearby Lagrangians, so the blend's objective is optimal
  // to within the bracket width times the budget.
  const double path_lo = dp_path_length(instance, y_lo);
  const double path_hi = dp_path_length(instance, y_hi);
  std::vector<double> blended(horizon);
  if (path_lo > path_hi) {
    const double theta = (path_lo - instance.d_beta) / (path_lo - path_hi);
    for (int t = 0; t < horizon; ++t) {
      blended[t] = theta * y_hi[t] + (1.0 - theta) * y_lo[t];
    }
  } else {
    blended = y_hi;
  }
  return finish_dp_solution(instance, blended, evaluations, true);
}

bool interval_domain(const DomainSpec& domain, double& lo, double& hi) {
  if (domain.dimension != 1) return false;
  if (domain.kind == DomainKind::EuclideanBall) {
    lo = domain.center[0] - domain.radius;
    hi = domain.center[0] + domain.radius;
  } else {
    lo = domain.lower[0];
    hi = domain.upper[0];
  }
  return true;
}

}  // namespace

OracleSolution solve_offline(const std::vector<LossFunction>& losses, const DomainSpec& domain,
                             const DynamicsBudget& budget, const OracleConfig& config) {
  if (losses.empty()) throw std::invalid_argument("loss sequence must be nonempty");

  double lo = 0.0;
  double hi = 0.0;
  const bool linear1d = interval_domain(domain, lo, hi) &&
                        std::all_of(losses.begin(), losses.end(), [](const LossFunction& f) {
                          return f.linear_coefficient().has_value();
                        });
  OracleMethod method = OracleMethod::ProjectedSubgradient;
  if (config.method.has_value()) {
    method = *config.method;
    if (method == OracleMethod::GridSearch)
      throw std::invalid_argument("grid search needs a resolution; call grid_oracle");
    if (method == OracleMethod::DualPathDp && !linear1d)
      throw std::invalid_argument("exact method requires one-dimensional linear losses");
  } else if (linear1d) {
    method = OracleMethod::DualPathDp;
  }

  if (method == OracleMethod::DualPathDp) {
    DpInstance instance;
    instance.lo = lo;
    instance.hi = hi;
    instance.beta = budget.beta;
    instance.d_beta = budget.d_beta;
    instance.stages.reserve(losses.size());
    for (const LossFunction& loss : losses) {
      const Regularizer& reg = loss.regularizer();
      instance.stages.push_back(LinearStage{
          (*loss.linear_coefficient())[0],
          reg.kind() == RegularizerKind::L1 ? reg.weight() : 0.0});
    }
    return solve_by_dual_dp(instance, config);
  }
  return solve_by_subgradient(losses, domain, budget, config);
}

OracleSolution solve_offline(const RademacherGame& game, const OracleConfig& config) {
  if (game.dimension == 1 && (!config.method.has_value() ||
                              *config.method == OracleMethod::DualPathDp)) {
    DpInstance instance;
    instance.lo = -1.0;
    instance.hi = 1.0;
    instance.beta = game.budget.beta;
    instance.d_beta = game.budget.d_beta;
    instance.stages.reserve(game.horizon);
    for (int t = 1; t <= game.horizon; ++t) {
      instance.stages.push_back(LinearStage{game.loss_matrix(0, t - 1), 0.0});
    }
    return solve_by_dual_dp(instance, config);
  }
  std::vector<LossFunction> losses;
  losses.reserve(game.horizon);
  for (int t = 1; t <= game.horizon; ++t) {
    losses.push_back(make_linear_loss(game.loss_vector(t), Regularizer::zero()));
  }
  return solve_offline(losses, game.domain, game.budget, config);
}

OracleSolution grid_oracle(const std::vector<LossFunction>& losses, const DomainSpec& domain,
                           const DynamicsBudget& budget, double resolution) {
  if (losses.empty()) throw std::invalid_argument("loss sequence must be nonempty");
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
  const int horizon = static_cast<int>(losses.size());
  if (domain.dimension > 2 || horizon > 4)
    throw std::invalid_argument("grid oracle out of range");

  // Per-axis ticks.
  std::vector<std::vector<double>> axes(domain.dimension);
  for (int i = 0; i < domain.dimension; ++i) {
    double lo, hi;
    if (domain.kind == DomainKind::EuclideanBall) {
      lo = domain.center[i] - domain.radius;
      hi = domain.center[i] + domain.radius;
    } else {
      lo = domain.lower[i];
      hi = domain.upper[i];
    }
    const double span = hi - lo;
    int ticks = static_cast<int>(std::floor(span / resolution + 1e-9)) + 1;
    for (int k = 0; k < ticks; ++k) axes[i].push_back(lo + k * resolution);
    if (std::abs(axes[i].back() - hi) > 1e-12) axes[i].push_back(hi);
  }

  // Candidate points, feasibility filtered for the ball.
  std::vector<VectorXd> points;
  if (domain.dimension == 1) {
    for (const double v : axes[0]) {
      VectorXd p(1);
      p[0] = v;
      points.push_back(std::move(p));
    }
  } else {
    for (const double a : axes[0]) {
      for (const double b : axes[1]) {
        VectorXd p(2);
        p << a, b;
        if (membership_residual(domain, p) <= 1e-12) points.push_back(std::move(p));
      }
    }
  }
  const double count = std::pow(static_cast<double>(points.size()), horizon);
  if (points.empty() || count > 2e8) throw std::invalid_argument("grid oracle out of range");

  // Stage values and pairwise distances ahead of the sweep.
  const std::size_t n = points.size();
  std::vector<std::vector<double>> stage_value(horizon, std::vector<double>(n));
  for (int t = 0; t < horizon; ++t) {
    for (std::size_t p = 0; p < n; ++p) stage_value[t][p] = losses[t].value(points[p]);
  }
  std::vector<double> distance(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) distance[a * n + b] = (points[a] - points[b]).norm();
  }

  double best_objective = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> index(horizon, 0), best_index(horizon, 0);
  long long evaluated = 0;

  // Depth-first sweep with partial-path pruning.
  std::vector<double> partial_path(horizon, 0.0), partial_value(horizon, 0.0);
  int depth = 0;
  while (depth >= 0) {
    if (index[depth] == n) {
      --depth;
      if (depth >= 0) ++index[depth];
      continue;
    }
    const std::size_t p = index[depth];
    double path = depth > 0 ? partial_path[depth - 1] : 0.0;
    if (depth > 0) {
      path += transition_weight(depth, budget.beta) * distance[index[depth - 1] * n + p];
    }
    if (path > budget.d_beta + 1e-12) {
      ++index[depth];
      continue;
    }
    const double value = (depth > 0 ? partial_value[depth - 1] : 0.0) + stage_value[depth][p];
    if (depth == horizon - 1) {
      ++evaluated;
      if (value < best_objective) {
        best_objective = value;
        best_index = index;
      }
      ++index[depth];
    } else {
      partial_path[depth] = path;
      partial_value[depth] = value;
      ++depth;
      index[depth] = 0;
    }
  }

  std::vector<VectorXd> best_points;
  best_points.reserve(horizon);
  for (int t = 0; t < horizon; ++t) best_points.push_back(points[best_index[t]]);
  OracleSolution solution;
  solution.comparator = ComparatorSequence::from_points(std::move(best_points), budget.beta);
  solution.objective = best_objective;
  solution.method = OracleMethod::GridSearch;
  solution.iterations = static_cast<int>(std::min<long long>(evaluated, 2000000000LL));
  solution.constraint_slack = budget.d_beta - solution.comparator.weighted_path_length();
  solution.recent_improvement = 0.0;
  solution.converged = true;
  return solution;
}

}  // namespace dynreg
