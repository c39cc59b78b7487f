#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rb/analytics.hpp"
#include "rb/params.hpp"
#include "rb/search.hpp"

namespace rb {

/// Shared configuration for sweeps and suites. The density grid is used by
/// the sweep only; the suites always run at the threshold point.
struct SweepConfig {
  int n = 10;
  double alpha = 1.0;
  std::optional<int> d;  ///< overrides round(n^alpha)
  double p = 0.5;
  int k = 2;
  double r_min = 0.5;
  double r_max = 2.0;
  int steps = 4;
  /// When non-empty, the grid is r_cr times each factor instead of [r_min, r_max].
  std::vector<double> r_factors;
  int trials = 100;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultNodeBudget;
  int jobs = 1;
  /// Avoid-set sizes for the flip suite; empty means {0, ceil(sqrt d)}.
  std::vector<int> avoid_sizes;
  /// Wall time is stored only when requested, so default runs are byte-stable.
  bool record_timing = false;

  void validate() const;
  std::vector<double> r_grid(double r_cr) const;
};

inline constexpr int kRecordSchemaVersion = 1;

struct ExperimentRecord {
  std::string suite;
  int n = 0;
  int d = 0;
  int k = 0;
  double p = 0.0;
  double p_eff = 0.0;
  double alpha = 0.0;
  double r = 0.0;
  int m = 0;
  std::uint64_t seed = 0;
  int avoid_size = 0;
  long long trials = 0;
  long long sat_count = 0;
  long long unsat_count = 0;
  long long budget_exhausted_count = 0;
  long long unique_solution_count = 0;
  /// Sums over trials with an exact count, for Monte Carlo moments.
  long long counted_trials = 0;
  double solution_count_sum = 0.0;
  double solution_count_sq_sum = 0.0;
  long long near_trials = 0;
  double near_count_sum = 0.0;
  double near_count_sq_sum = 0.0;
  long long self_unsat_formula_count = 0;
  long long flip_s2u_attempts = 0;
  long long flip_s2u_success = 0;
  long long flip_u2s_attempts = 0;
  long long flip_u2s_success = 0;
  long long u2s_witness_ok = 0;
  long long class_exit_count = 0;
  long long swap_failures = 0;
  long long u_in_avoid_count = 0;
  long long invariance_checks = 0;
  long long invariance_passes = 0;
  double total_nodes = 0.0;
  double wall_seconds = 0.0;

  double mean_nodes() const { return trials > 0 ? total_nodes / trials : 0.0; }
  Interval pr_sat() const { return wilson_interval(sat_count, trials - budget_exhausted_count); }
  Interval pr_unique() const {
    return wilson_interval(unique_solution_count, trials - budget_exhausted_count);
  }
  Interval pr_self_unsat_given_unsat() const {
    return wilson_interval(self_unsat_formula_count, unsat_count);
  }
  Interval s2u_success() const { return wilson_interval(flip_s2u_success, flip_s2u_attempts); }
  Interval u2s_success() const { return wilson_interval(flip_u2s_success, flip_u2s_attempts); }

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

/// Seed of trial `index`: first draw of the harness stream of the run seed.
std::uint64_t trial_seed(std::uint64_t run_seed, std::uint64_t index);

RbParams point_params(const SweepConfig& config, std::uint64_t seed,
                      std::optional<double> r = std::nullopt);

/// One record per density, sorted by r. Pr[SAT] and solution counts.
std::vector<ExperimentRecord> run_phase_sweep(const SweepConfig& config);

/// At the threshold density: SAT rate, unique-solution rate, self-unsat
/// formulas among UNSAT instances, near-solution counts of constraint 0.
ExperimentRecord run_threshold_suite(const SweepConfig& config);

/// Directional flips on instances with at most one solution, one record per
/// avoid-set size.
std::vector<ExperimentRecord> run_flip_suite(const SweepConfig& config);

enum class RecordFormat { kCsv, kJson };

/// Column header of the persisted CSV.
extern const char* const kRecordCsvHeader;

std::string records_to_csv(const std::vector<ExperimentRecord>& records);
std::string records_to_json(const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> records_from_csv(const std::string& text);
std::vector<ExperimentRecord> records_from_json(const std::string& text);

void persist(const std::vector<ExperimentRecord>& records, const std::string& path,
             RecordFormat format);
/// Format chosen from the extension (.json, else CSV).
std::vector<ExperimentRecord> load_records(const std::string& path);

}  // namespace rb
