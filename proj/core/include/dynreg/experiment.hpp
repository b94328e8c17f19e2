#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynreg/domain.hpp"
#include "dynreg/prox.hpp"

namespace dynreg {

/// What a harness invocation measures.
enum class ExperimentKind {
  UpperBound,      ///< tuned-schedule regret against the exact offline comparator
  LowerBound,      ///< adversarial game against the constructed block comparator
  LemmaSuite,      ///< analytic verifier battery (walk, series, binomial bounds)
  ShiftingRegret,  ///< shift-tuned schedule against random M-shift comparators
  OracleCheck,     ///< offline solvers cross-checked against grid enumeration
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

/// Full description of a harness run.  Parsed from a config file, overridden
/// by command-line flags, serialized canonically for hashing and round-trips.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::UpperBound;
  std::vector<int> horizons{64, 256, 1024};
  double beta = 0.0;
  double d_beta = 4.0;
  double gamma = 0.5;
  int dimension = 1;
  int seeds = 100;
  std::uint64_t base_seed = 2026;
  int shifts = 0;
  DomainKind domain_kind = DomainKind::EuclideanBall;
  double radius = 1.0;  ///< ball radius, or box half-width per coordinate
  RegularizerKind reg_kind = RegularizerKind::Zero;
  double reg_weight = 0.0;
  std::string out_path;

  bool operator==(const ExperimentConfig&) const = default;
};

/// key = value lines, optionally under an [experiment] header; '#' comments.
/// Unknown keys, sections, or malformed values throw std::invalid_argument.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical text form; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// FNV-1a over the canonical form, as 16 hex digits; stamped into CSV output
/// so result files are traceable to the exact configuration.
std::string config_hash_hex(const ExperimentConfig& config);

/// Throws std::invalid_argument when the configuration cannot be run.
void validate(const ExperimentConfig& config);

/// One CSV row.  Fields without a meaning for the experiment kind hold NaN.
struct RunRecord {
  std::uint64_t seed = 0;
  int horizon = 0;
  double beta = 0.0;
  double d_beta = 0.0;
  double measured_regret = 0.0;
  double theory_upper = 0.0;
  double theory_lower = 0.0;
  double comparator_gain = 0.0;
  double runtime_ms = 0.0;
};

/// One named analytic check from the lemma suite.
struct LemmaCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::vector<LemmaCheck> lemmas;  ///< filled by the lemma suite only
  int exit_code = 0;               ///< 0 ok, 2 invariant violation, 3 numerical failure
  std::string message;             ///< human-readable per-horizon summary or failure text
};

/// Worker count: DYNREG_THREADS when set (positive integer, else
/// std::invalid_argument), hardware concurrency otherwise.
int thread_budget();

/// Runs the configured experiment.  Replications are distributed over
/// thread_budget() workers and reduced in seed order, so output is identical
/// at any thread count.  Configuration problems throw std::invalid_argument;
/// runtime problems are reported through exit_code and message.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// CSV with '#' metadata lines (config hash, parameters, seed range), a fixed
/// header row, and one row per record.
void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<RunRecord>& records);
std::string csv_text(const ExperimentConfig& config, const std::vector<RunRecord>& records);

/// Per-horizon means and standard errors plus the log-log slope of mean
/// measured regret against the horizon.
std::string summary_text(const ExperimentConfig& config, const std::vector<RunRecord>& records);

}  // namespace dynreg
