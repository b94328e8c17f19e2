#include "dynreg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "dynreg/adversary.hpp"
#include "dynreg/analysis.hpp"
#include "dynreg/loss.hpp"
#include "dynreg/metrics.hpp"
#include "dynreg/oracle.hpp"
#include "dynreg/pog.hpp"
#include "dynreg/rng.hpp"
#include "dynreg/schedule.hpp"

namespace dynreg {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trimmed(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

// Shortest round-trip decimal form.
std::string fmt(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return ec == std::errc() ? std::string(buffer, ptr) : std::string("nan");
}

std::string fmt_ms(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3f", value);
  return buffer;
}

double parse_double_value(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw std::invalid_argument("invalid value for key: " + key);
  return out;
}

long long parse_int_value(const std::string& key, const std::string& value) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw std::invalid_argument("invalid value for key: " + key);
  return out;
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw std::invalid_argument("invalid value for key: " + key);
  return out;
}

std::vector<int> parse_horizons_value(const std::string& value) {
  std::vector<int> horizons;
  std::string item;
  std::istringstream stream(value);
  while (std::getline(stream, item, ',')) {
    item = trimmed(item);
    if (item.empty()) throw std::invalid_argument("invalid value for key: horizons");
    horizons.push_back(static_cast<int>(parse_int_value("horizons", item)));
  }
  if (horizons.empty()) throw std::invalid_argument("invalid value for key: horizons");
  return horizons;
}

// Runs body(0..total-1) on the given number of workers; indices are claimed
// atomically but results land in caller-indexed slots, so reductions are
// deterministic at any thread count.
void parallel_for(int total, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, total));
  if (threads == 1) {
    for (int i = 0; i < total; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= total) break;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  if (error) std::rethrow_exception(error);
}

DomainSpec experiment_domain(const ExperimentConfig& config) {
  // Coordinates of every drawn loss vector lie in [-1, 1], so the squared
  // subgradient bound is the dimension.
  const double subgrad_sq = static_cast<double>(config.dimension);
  if (config.domain_kind == DomainKind::EuclideanBall) {
    return make_ball_domain(Eigen::VectorXd::Zero(config.dimension), config.radius, subgrad_sq);
  }
  const Eigen::VectorXd half = Eigen::VectorXd::Constant(config.dimension, config.radius);
  return make_box_domain(-half, half, subgrad_sq);
}

Regularizer experiment_regularizer(const ExperimentConfig& config) {
  return config.reg_kind == RegularizerKind::L1 ? Regularizer::l1(config.reg_weight)
                                                : Regularizer::zero();
}

std::vector<LossFunction> rademacher_losses(int dimension, int horizon, std::uint64_t seed,
                                            const Regularizer& reg) {
  std::vector<LossFunction> losses;
  losses.reserve(horizon);
  for (int t = 1; t <= horizon; ++t) {
    Eigen::VectorXd v(dimension);
    for (int i = 0; i < dimension; ++i) {
      v[i] = rademacher_sign(seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i));
    }
    losses.push_back(make_linear_loss(v, reg));
  }
  return losses;
}

Eigen::VectorXd random_domain_point(const DomainSpec& domain, std::uint64_t seed,
                                    std::uint64_t stream) {
  Eigen::VectorXd point(domain.dimension);
  for (int i = 0; i < domain.dimension; ++i) {
    const double u = uniform01(seed, stream, static_cast<std::uint64_t>(i));
    if (domain.kind == DomainKind::EuclideanBall) {
      point[i] = domain.center[i] +
                 domain.radius * (2.0 * u - 1.0) / std::sqrt(static_cast<double>(domain.dimension));
    } else {
      point[i] = domain.lower[i] + u * (domain.upper[i] - domain.lower[i]);
    }
  }
  return point;
}

// Piecewise-constant comparator with exactly the budgeted number of changes,
// at positions and values drawn from the replication's counter stream.
ComparatorSequence random_shift_comparator(const DomainSpec& domain, int horizon, int shifts,
                                           std::uint64_t seed) {
  std::vector<int> cuts;
  std::uint64_t attempt = 0;
  while (static_cast<int>(cuts.size()) < shifts) {
    const double u = uniform01(seed, 2000000000ULL + attempt, 0);
    ++attempt;
    const int position = 2 + std::min(horizon - 2, static_cast<int>(u * (horizon - 1)));
    if (std::find(cuts.begin(), cuts.end(), position) == cuts.end()) cuts.push_back(position);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Eigen::VectorXd> points(horizon);
  std::size_t segment = 0;
  Eigen::VectorXd current = random_domain_point(domain, seed, 3000000000ULL);
  for (int t = 1; t <= horizon; ++t) {
    if (segment < cuts.size() && t == cuts[segment]) {
      ++segment;
      current = random_domain_point(domain, seed, 3000000000ULL + segment);
    }
    points[t - 1] = current;
  }
  return ComparatorSequence::from_points(std::move(points), 0.0);
}

RunRecord upper_bound_task(const ExperimentConfig& config, int horizon, std::uint64_t seed,
                           std::string& issue) {
  const DynamicsBudget budget = make_dynamics_budget(config.beta, config.d_beta);
  const DomainSpec domain = experiment_domain(config);
  const Regularizer reg = experiment_regularizer(config);
  const std::vector<LossFunction> losses =
      rademacher_losses(config.dimension, horizon, seed, reg);
  const double diameter_sq = domain.diameter_sq_bound;
  const double subgrad_sq = domain.subgrad_sq_bound;
  const Schedule schedule = make_dynamics_tuned_schedule(config.gamma, config.beta,
                                                         config.d_beta, diameter_sq, subgrad_sq,
                                                         horizon);
  ProximalGradientLearner learner(domain, schedule);
  const Trajectory trajectory =
      run_online(learner, [&losses](int t) { return losses[t - 1]; }, horizon);
  double learner_loss = 0.0;
  for (const double value : trajectory.losses) learner_loss += value;
  const OracleSolution oracle = solve_offline(losses, domain, budget, OracleConfig{});

  RunRecord record;
  record.seed = seed;
  record.horizon = horizon;
  record.beta = config.beta;
  record.d_beta = config.d_beta;
  record.measured_regret = learner_loss - oracle.objective;
  record.theory_upper =
      pog_regret_bound(schedule, budget, diameter_sq, subgrad_sq,
                       reg.value(domain.center_point()), reg.value(trajectory.final_point));
  record.theory_lower = adversarial_regret_floor(budget, horizon);
  record.comparator_gain = -oracle.objective;
  if (oracle.constraint_slack < -1e-7) {
    issue = "offline comparator exceeds the path budget";
  } else if (record.measured_regret > record.theory_upper + 1e-5) {
    issue = "measured regret exceeds the guarantee";
  }
  return record;
}

RunRecord lower_bound_task(const ExperimentConfig& config, int horizon, std::uint64_t seed,
                           std::string& issue) {
  const DynamicsBudget budget = make_dynamics_budget(config.beta, config.d_beta);
  const RademacherGame game = make_rademacher_game(config.dimension, horizon, budget, seed);
  // The reference learner plays the center; any non-anticipating learner has
  // zero expected loss against the sign draws, so the measured regret isolates
  // the comparator gain.
  FixedPointLearner learner(Eigen::VectorXd::Zero(config.dimension));
  const RegretReport report = play_game(game, learner);

  RunRecord record;
  record.seed = seed;
  record.horizon = horizon;
  record.beta = config.beta;
  record.d_beta = config.d_beta;
  record.measured_regret = report.dynamic_regret.value_or(kNaN);
  record.theory_upper = kNaN;
  record.theory_lower = report.theory_lower.value_or(kNaN);
  record.comparator_gain = comparator_gain(game);
  const ComparatorSequence comparator = build_comparator(game);
  if (comparator.weighted_path_length() > config.d_beta + 1e-9) {
    issue = "constructed comparator exceeds the path budget";
  }
  return record;
}

RunRecord shifting_task(const ExperimentConfig& config, int horizon, std::uint64_t seed,
                        std::string& issue) {
  const DomainSpec domain = experiment_domain(config);
  const Regularizer reg = experiment_regularizer(config);
  const std::vector<LossFunction> losses =
      rademacher_losses(config.dimension, horizon, seed, reg);
  const double diameter_sq = domain.diameter_sq_bound;
  const double subgrad_sq = domain.subgrad_sq_bound;
  const double path_budget =
      shift_to_path_budget(make_shift_budget(config.shifts), diameter_sq);
  const Schedule schedule =
      make_shift_tuned_schedule(config.gamma, config.shifts, diameter_sq, subgrad_sq, horizon);
  ProximalGradientLearner learner(domain, schedule);
  const Trajectory trajectory =
      run_online(learner, [&losses](int t) { return losses[t - 1]; }, horizon);
  const ComparatorSequence comparator =
      random_shift_comparator(domain, horizon, config.shifts, seed);
  double comparator_loss = 0.0;
  for (int t = 0; t < horizon; ++t) comparator_loss += losses[t].value(comparator.points()[t]);

  RunRecord record;
  record.seed = seed;
  record.horizon = horizon;
  record.beta = 0.0;
  record.d_beta = path_budget;
  record.measured_regret = shifting_regret(trajectory, comparator, losses);
  record.theory_upper =
      pog_regret_bound(schedule, make_dynamics_budget(0.0, path_budget), diameter_sq, subgrad_sq,
                       reg.value(domain.center_point()), reg.value(trajectory.final_point));
  record.theory_lower = kNaN;
  record.comparator_gain = -comparator_loss;
  if (comparator.shifts() > config.shifts) {
    issue = "random comparator exceeds the shift budget";
  } else if (comparator.weighted_path_length() > path_budget + 1e-9) {
    issue = "random comparator exceeds the implied path budget";
  } else if (record.measured_regret > record.theory_upper + 1e-5) {
    issue = "measured shifting regret exceeds the guarantee";
  }
  return record;
}

RunRecord oracle_check_task(const ExperimentConfig& config, int horizon, std::uint64_t seed,
                            std::string& issue) {
  const int dimension = config.dimension;
  const DomainSpec domain = experiment_domain(config);
  const Regularizer reg = experiment_regularizer(config);
  std::vector<LossFunction> losses;
  losses.reserve(horizon);
  double l1_sum = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    Eigen::VectorXd v(dimension);
    for (int i = 0; i < dimension; ++i) {
      v[i] = 2.0 * uniform01(seed, 100 + static_cast<std::uint64_t>(t),
                             static_cast<std::uint64_t>(i)) -
             1.0;
    }
    l1_sum += v.cwiseAbs().sum();
    losses.push_back(make_linear_loss(v, reg));
  }
  const double d_beta = 0.5 + 1.5 * uniform01(seed, 7, 0);
  const DynamicsBudget budget = make_dynamics_budget(config.beta, d_beta);

  const OracleSolution solution = solve_offline(losses, domain, budget, OracleConfig{});
  const double resolution = dimension == 1 ? (horizon <= 3 ? 0.01 : 0.025) : 0.1;
  const OracleSolution grid = grid_oracle(losses, domain, budget, resolution);
  const double lipschitz_scale =
      l1_sum + 1.0 + config.reg_weight * dimension * horizon;

  RunRecord record;
  record.seed = seed;
  record.horizon = horizon;
  record.beta = config.beta;
  record.d_beta = d_beta;
  record.measured_regret = solution.objective - grid.objective;
  record.theory_upper =
      solution.method == OracleMethod::DualPathDp ? 1e-7 : 0.05 * lipschitz_scale;
  record.theory_lower = -resolution * lipschitz_scale;
  record.comparator_gain = -solution.objective;
  if (record.measured_regret > record.theory_upper) {
    issue = "solver objective is worse than grid enumeration allows";
  } else if (solution.constraint_slack < -1e-7) {
    issue = "solver output violates the path budget";
  }
  return record;
}

ExperimentResult run_lemma_suite(const ExperimentConfig& config) {
  ExperimentResult result;
  auto add = [&result](std::string name, bool ok, std::string detail) {
    result.lemmas.push_back(LemmaCheck{std::move(name), ok, std::move(detail)});
  };

  {
    double worst = 0.0;
    for (int horizon = 2; horizon <= 24; horizon += 2) {
      worst = std::max(worst, std::abs(walk_expectation_closed_form(horizon) -
                                       walk_expectation_enumeration(horizon)));
    }
    add("walk-closed-form-matches-enumeration", worst <= 1e-12, "max gap " + fmt(worst));
  }
  {
    const double value = walk_expectation_closed_form(100);
    const double frozen = 7.958923738717876;
    add("walk-expectation-at-100", std::abs(value - frozen) <= 1e-12,
        "value " + fmt(value) + " frozen " + fmt(frozen));
  }
  {
    bool ok = true;
    double margin = std::numeric_limits<double>::infinity();
    for (int horizon = 2; horizon <= 1000; horizon += 2) {
      const double gap = walk_expectation_closed_form(horizon) -
                         std::sqrt(static_cast<double>(horizon) / 2.0);
      margin = std::min(margin, gap);
      ok = ok && gap >= 0.0;
    }
    add("walk-expectation-above-sqrt-half-horizon", ok, "min margin " + fmt(margin));
  }
  {
    bool ok = true;
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 500; ++n) {
      const double ratio = central_binomial_ratio(n) * 2.0 * std::sqrt(static_cast<double>(n));
      worst_ratio = std::min(worst_ratio, ratio);
      ok = ok && ratio >= 1.0 - 1e-12;
    }
    add("central-binomial-above-half-inverse-sqrt", ok, "min ratio " + fmt(worst_ratio));
  }
  {
    bool ok = true;
    for (int g = 0; g <= 9; ++g) {
      for (const int horizon : {1, 10, 100, 1000, 10000}) {
        ok = ok && series_bound_check(g / 10.0, horizon).ok;
      }
    }
    add("step-series-below-integral-bound", ok, "gamma grid 0..0.9, horizons up to 10000");
  }
  {
    bool ok = true;
    std::string detail;
    // The walk check requires at least a thousand replications to make its
    // three-standard-error band meaningful.
    const int walk_seeds = std::max(config.seeds, 1000);
    for (const int horizon : config.horizons) {
      const auto start = std::chrono::steady_clock::now();
      const WalkBoundCheck check =
          l1_walk_lower_bound_check(config.dimension, horizon, walk_seeds, config.base_seed);
      const double elapsed =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      bool horizon_ok = check.ok;
      if (check.exact_mean.has_value()) {
        horizon_ok = horizon_ok && std::abs(check.empirical_mean - *check.exact_mean) <=
                                       4.0 * check.std_error + 1e-12;
      }
      ok = ok && horizon_ok;
      detail += "T=" + std::to_string(horizon) + " mean=" + fmt(check.empirical_mean) +
                " floor=" + fmt(check.floor) + "; ";
      RunRecord record;
      record.seed = config.base_seed;
      record.horizon = horizon;
      record.beta = kNaN;
      record.d_beta = kNaN;
      record.measured_regret = check.empirical_mean;
      record.theory_upper = check.exact_mean.value_or(kNaN);
      record.theory_lower = check.floor;
      record.comparator_gain = kNaN;
      record.runtime_ms = elapsed;
      result.records.push_back(record);
    }
    add("monte-carlo-walk-above-floor", ok, detail);
  }
  {
    bool ok = true;
    for (int shifts = 0; shifts <= 5; ++shifts) {
      for (const double diameter_sq : {1.0, 4.0, 9.0}) {
        const double expected = shifts * std::sqrt(diameter_sq);
        ok = ok && std::abs(shift_to_path_budget(make_shift_budget(shifts), diameter_sq) -
                            expected) <= 1e-12;
      }
    }
    add("shift-budget-to-path-budget", ok, "shifts 0..5, squared diameters 1, 4, 9");
  }

  std::ostringstream message;
  bool all_ok = true;
  for (const LemmaCheck& check : result.lemmas) {
    all_ok = all_ok && check.ok;
    message << (check.ok ? "ok   " : "FAIL ") << check.name << "  (" << check.detail << ")\n";
  }
  result.exit_code = all_ok ? 0 : 2;
  message << (all_ok ? "all lemma checks passed\n" : "lemma checks failed\n");
  result.message = message.str();
  return result;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::UpperBound: return "upper-bound";
    case ExperimentKind::LowerBound: return "lower-bound";
    case ExperimentKind::LemmaSuite: return "lemmas";
    case ExperimentKind::ShiftingRegret: return "shifting";
    case ExperimentKind::OracleCheck: return "oracle-check";
  }
  throw std::invalid_argument("unknown experiment kind");
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "upper-bound") return ExperimentKind::UpperBound;
  if (name == "lower-bound") return ExperimentKind::LowerBound;
  if (name == "lemmas") return ExperimentKind::LemmaSuite;
  if (name == "shifting") return ExperimentKind::ShiftingRegret;
  if (name == "oracle-check") return ExperimentKind::OracleCheck;
  throw std::invalid_argument("unknown experiment kind: " + name);
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    line = trimmed(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line != "[experiment]")
        throw std::invalid_argument("unknown config section: " + line);
      continue;
    }
    const auto equals = line.find('=');
    if (equals == std::string::npos)
      throw std::invalid_argument("malformed config line: " + line);
    const std::string key = trimmed(line.substr(0, equals));
    const std::string value = trimmed(line.substr(equals + 1));
    if (key == "kind") {
      config.kind = experiment_kind_from_string(value);
    } else if (key == "horizons") {
      config.horizons = parse_horizons_value(value);
    } else if (key == "beta") {
      config.beta = parse_double_value(key, value);
    } else if (key == "d_beta") {
      config.d_beta = parse_double_value(key, value);
    } else if (key == "gamma") {
      config.gamma = parse_double_value(key, value);
    } else if (key == "dim") {
      config.dimension = static_cast<int>(parse_int_value(key, value));
    } else if (key == "seeds") {
      config.seeds = static_cast<int>(parse_int_value(key, value));
    } else if (key == "seed") {
      config.base_seed = parse_u64_value(key, value);
    } else if (key == "shifts") {
      config.shifts = static_cast<int>(parse_int_value(key, value));
    } else if (key == "domain") {
      if (value == "ball") {
        config.domain_kind = DomainKind::EuclideanBall;
      } else if (value == "box") {
        config.domain_kind = DomainKind::Box;
      } else {
        throw std::invalid_argument("invalid value for key: domain");
      }
    } else if (key == "radius") {
      config.radius = parse_double_value(key, value);
    } else if (key == "reg") {
      if (value == "zero") {
        config.reg_kind = RegularizerKind::Zero;
      } else if (value == "l1") {
        config.reg_kind = RegularizerKind::L1;
      } else {
        throw std::invalid_argument("invalid value for key: reg");
      }
    } else if (key == "reg_weight") {
      config.reg_weight = parse_double_value(key, value);
    } else if (key == "out") {
      config.out_path = value;
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream text;
  text << stream.rdbuf();
  return parse_config_text(text.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "kind = " << to_string(config.kind) << "\n";
  out << "horizons = ";
  for (std::size_t i = 0; i < config.horizons.size(); ++i) {
    if (i) out << ',';
    out << config.horizons[i];
  }
  out << "\n";
  out << "beta = " << fmt(config.beta) << "\n";
  out << "d_beta = " << fmt(config.d_beta) << "\n";
  out << "gamma = " << fmt(config.gamma) << "\n";
  out << "dim = " << config.dimension << "\n";
  out << "seeds = " << config.seeds << "\n";
  out << "seed = " << config.base_seed << "\n";
  out << "shifts = " << config.shifts << "\n";
  out << "domain = " << (config.domain_kind == DomainKind::EuclideanBall ? "ball" : "box")
      << "\n";
  out << "radius = " << fmt(config.radius) << "\n";
  out << "reg = " << (config.reg_kind == RegularizerKind::L1 ? "l1" : "zero") << "\n";
  out << "reg_weight = " << fmt(config.reg_weight) << "\n";
  if (!config.out_path.empty()) out << "out = " << config.out_path << "\n";
  return out.str();
}

std::string config_hash_hex(const ExperimentConfig& config) {
  // The hash identifies the experiment itself; where the results are written
  // is incidental, so the output path is excluded from the canonical text.
  ExperimentConfig keyed = config;
  keyed.out_path.clear();
  const std::string canonical = serialize_config(keyed);
  std::uint64_t hash = 1469598103934665603ULL;
  for (const unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

void validate(const ExperimentConfig& config) {
  if (config.horizons.empty()) throw std::invalid_argument("horizons must be nonempty");
  for (const int horizon : config.horizons) {
    if (horizon < 1) throw std::invalid_argument("horizons must be positive");
    if (horizon > (1 << 22)) throw std::invalid_argument("horizon too large");
  }
  if (!(config.beta >= 0.0 && config.beta < 1.0))
    throw std::invalid_argument("beta must lie in [0, 1)");
  if (!(config.gamma >= 0.0 && config.gamma < 1.0))
    throw std::invalid_argument("gamma must lie in [0, 1)");
  if (!(config.d_beta >= 0.0)) throw std::invalid_argument("d_beta must be nonnegative");
  if (config.dimension < 1 || config.dimension > 1024)
    throw std::invalid_argument("dim must lie in [1, 1024]");
  if (config.seeds < 1) throw std::invalid_argument("seeds must be positive");
  if (config.shifts < 0) throw std::invalid_argument("shifts must be nonnegative");
  if (!(config.radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(config.reg_weight >= 0.0))
    throw std::invalid_argument("reg_weight must be nonnegative");
  if (config.reg_kind != RegularizerKind::Zero && config.reg_kind != RegularizerKind::L1)
    throw std::invalid_argument("reg must be zero or l1");
  switch (config.kind) {
    case ExperimentKind::UpperBound:
      if (config.gamma < config.beta) throw std::invalid_argument("invalid exponent");
      break;
    case ExperimentKind::LowerBound:
      for (const int horizon : config.horizons) {
        if (horizon % 2 != 0)
          throw std::invalid_argument("lower-bound horizons must be even");
      }
      if (config.domain_kind != DomainKind::EuclideanBall || config.radius != 1.0 ||
          config.reg_kind != RegularizerKind::Zero)
        throw std::invalid_argument(
            "lower-bound runs on the unit-ball game without a regularizer");
      break;
    case ExperimentKind::ShiftingRegret:
      for (const int horizon : config.horizons) {
        if (config.shifts >= horizon)
          throw std::invalid_argument("shifts must be fewer than the horizon");
      }
      break;
    case ExperimentKind::OracleCheck:
      if (config.dimension > 2)
        throw std::invalid_argument("oracle check supports dim 1 or 2");
      for (const int horizon : config.horizons) {
        if (horizon > (config.dimension == 1 ? 4 : 3))
          throw std::invalid_argument("oracle check horizon too large for grid verification");
      }
      break;
    case ExperimentKind::LemmaSuite:
      break;
  }
}

int thread_budget() {
  const char* env = std::getenv("DYNREG_THREADS");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || value < 1 || value > 4096)
      throw std::invalid_argument("DYNREG_THREADS must be a positive integer");
    return static_cast<int>(value);
  }
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware > 0 ? static_cast<int>(hardware) : 1;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const int threads = thread_budget();
  if (config.kind == ExperimentKind::LemmaSuite) return run_lemma_suite(config);

  const int total = static_cast<int>(config.horizons.size()) * config.seeds;
  ExperimentResult result;
  result.records.resize(total);
  std::vector<std::string> issues(total);
  try {
    parallel_for(total, threads, [&](int index) {
      const int horizon = config.horizons[index / config.seeds];
      const std::uint64_t seed =
          replication_seed(config.base_seed, static_cast<std::uint64_t>(index));
      const auto start = std::chrono::steady_clock::now();
      RunRecord record;
      switch (config.kind) {
        case ExperimentKind::UpperBound:
          record = upper_bound_task(config, horizon, seed, issues[index]);
          break;
        case ExperimentKind::LowerBound:
          record = lower_bound_task(config, horizon, seed, issues[index]);
          break;
        case ExperimentKind::ShiftingRegret:
          record = shifting_task(config, horizon, seed, issues[index]);
          break;
        case ExperimentKind::OracleCheck:
          record = oracle_check_task(config, horizon, seed, issues[index]);
          break;
        case ExperimentKind::LemmaSuite:
          break;
      }
      record.runtime_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      result.records[index] = record;
    });
  } catch (const std::exception& error) {
    result.exit_code = 3;
    result.message = std::string("numerical failure: ") + error.what();
    return result;
  }

  for (int index = 0; index < total; ++index) {
    const RunRecord& record = result.records[index];
    // theory columns may legitimately be NaN (e.g. no guarantee applies to the
    // fixed-point learner in the lower-bound game), so only the measured
    // quantities are required to be finite.
    const bool finite = std::isfinite(record.measured_regret) &&
                        std::isfinite(record.comparator_gain);
    if (!finite && config.kind != ExperimentKind::LemmaSuite) {
      result.exit_code = 3;
      result.message = "numerical failure: non-finite value at seed=" +
                       std::to_string(record.seed) + " T=" + std::to_string(record.horizon);
      return result;
    }
  }
  int violations = 0;
  std::string first_issue;
  for (int index = 0; index < total; ++index) {
    if (!issues[index].empty()) {
      ++violations;
      if (first_issue.empty()) {
        first_issue = "invariant violation at seed=" + std::to_string(result.records[index].seed) +
                      " T=" + std::to_string(result.records[index].horizon) + ": " +
                      issues[index];
      }
    }
  }
  std::string status = "ok\n";
  if (violations > 0) {
    result.exit_code = 2;
    status = first_issue + " (" + std::to_string(violations) + " total)\n";
  }
  result.message = summary_text(config, result.records) + status;
  return result;
}

void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<RunRecord>& records) {
  out << "# proximal online gradient harness results\n";
  out << "# config_hash=" << config_hash_hex(config) << "\n";
  out << "# kind=" << to_string(config.kind) << " dim=" << config.dimension
      << " beta=" << fmt(config.beta) << " d_beta=" << fmt(config.d_beta)
      << " gamma=" << fmt(config.gamma) << " shifts=" << config.shifts << "\n";
  out << "# base_seed=" << config.base_seed << " replications=" << config.seeds << "\n";
  out << "seed,T,beta,d_beta,measured_regret,theory_upper,theory_lower,comparator_gain,"
         "runtime_ms\n";
  for (const RunRecord& record : records) {
    out << record.seed << ',' << record.horizon << ',' << fmt(record.beta) << ','
        << fmt(record.d_beta) << ',' << fmt(record.measured_regret) << ','
        << fmt(record.theory_upper) << ',' << fmt(record.theory_lower) << ','
        << fmt(record.comparator_gain) << ',' << fmt_ms(record.runtime_ms) << "\n";
  }
}

std::string csv_text(const ExperimentConfig& config, const std::vector<RunRecord>& records) {
  std::ostringstream out;
  write_csv(out, config, records);
  return out.str();
}

std::string summary_text(const ExperimentConfig& config,
                         const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "kind=" << to_string(config.kind) << " hash=" << config_hash_hex(config)
      << " dim=" << config.dimension << " beta=" << fmt(config.beta)
      << " d_beta=" << fmt(config.d_beta) << " gamma=" << fmt(config.gamma)
      << " shifts=" << config.shifts << " seeds=" << config.seeds << "\n";
  std::vector<std::pair<double, double>> slope_points;
  std::vector<int> seen;
  for (const int horizon : config.horizons) {
    if (std::find(seen.begin(), seen.end(), horizon) != seen.end()) continue;
    seen.push_back(horizon);
    double sum = 0.0, sum_sq = 0.0, gain = 0.0, upper = 0.0, lower = 0.0;
    int n = 0;
    for (const RunRecord& record : records) {
      if (record.horizon != horizon) continue;
      sum += record.measured_regret;
      sum_sq += record.measured_regret * record.measured_regret;
      gain += record.comparator_gain;
      upper += record.theory_upper;
      lower += record.theory_lower;
      ++n;
    }
    if (n == 0) continue;
    const double mean = sum / n;
    const double variance = n > 1 ? (sum_sq - sum * sum / n) / (n - 1.0) : 0.0;
    const double std_error = std::sqrt(std::max(variance, 0.0) / n);
    out << "T=" << horizon << " n=" << n << " mean_regret=" << fmt(mean)
        << " se=" << fmt(std_error) << " mean_gain=" << fmt(gain / n)
        << " mean_upper=" << fmt(upper / n) << " mean_lower=" << fmt(lower / n) << "\n";
    slope_points.emplace_back(static_cast<double>(horizon), mean);
  }
  try {
    const double slope = log_log_slope(slope_points);
    out << "slope_log_regret_vs_log_T=" << fmt(slope) << "\n";
  } catch (const std::invalid_argument&) {
    // fewer than two usable horizons: no slope line
  }
  return out.str();
}

}  // namespace dynreg
