#include "rb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>
#include <variant>

#include <json.hpp>

#include "rb/error.hpp"
#include "rb/instance.hpp"
#include "rb/rng.hpp"
#include "rb/serialize.hpp"
#include "rb/symmetry.hpp"

namespace rb {
namespace {

using Clock = std::chrono::steady_clock;

struct TrialResult {
  SolveStatus status = SolveStatus::kUnsat;
  std::optional<std::uint64_t> count;
  std::uint64_t nodes = 0;
  std::optional<std::uint64_t> near_count;
  bool self_unsat_formula = false;
  // Flip suite.
  bool s2u_attempt = false;
  bool u2s_attempt = false;
  bool success = false;
  bool witness_ok = false;
  bool class_exit = false;
  bool swap_failure = false;
  bool u_in_avoid = false;
  bool invariance_checked = false;
  bool invariance_passed = false;
};

// Runs fn(i) for i in [0, count) on `jobs` threads; results in index order.
template <typename Fn>
std::vector<TrialResult> run_trials(int count, int jobs, Fn fn) {
  std::vector<TrialResult> results(static_cast<std::size_t>(count));
  const int workers = std::max(1, std::min(jobs, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          results[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

ExperimentRecord make_record(const std::string& suite, const RbParams& params,
                             const SweepConfig& config) {
  ExperimentRecord rec;
  rec.suite = suite;
  rec.n = params.n;
  rec.d = params.d;
  rec.k = params.k;
  rec.p = params.p;
  rec.p_eff = params.p_eff;
  rec.alpha = params.alpha;
  rec.r = params.r;
  rec.m = params.m;
  rec.seed = config.seed;
  rec.trials = config.trials;
  return rec;
}

void accumulate(ExperimentRecord& rec, const std::vector<TrialResult>& results) {
  for (const auto& t : results) {
    rec.total_nodes += static_cast<double>(t.nodes);
    switch (t.status) {
      case SolveStatus::kSat:
        ++rec.sat_count;
        break;
      case SolveStatus::kUnsat:
        ++rec.unsat_count;
        break;
      case SolveStatus::kBudgetExhausted:
        ++rec.budget_exhausted_count;
        break;
    }
    if (t.count) {
      const double x = static_cast<double>(*t.count);
      ++rec.counted_trials;
      rec.solution_count_sum += x;
      rec.solution_count_sq_sum += x * x;
      if (*t.count == 1) ++rec.unique_solution_count;
    }
    if (t.near_count) {
      const double x = static_cast<double>(*t.near_count);
      ++rec.near_trials;
      rec.near_count_sum += x;
      rec.near_count_sq_sum += x * x;
    }
    if (t.self_unsat_formula) ++rec.self_unsat_formula_count;
    if (t.s2u_attempt) {
      ++rec.flip_s2u_attempts;
      if (t.success) ++rec.flip_s2u_success;
    }
    if (t.u2s_attempt) {
      ++rec.flip_u2s_attempts;
      if (t.success) ++rec.flip_u2s_success;
      if (t.witness_ok) ++rec.u2s_witness_ok;
    }
    if (t.class_exit) ++rec.class_exit_count;
    if (t.swap_failure) ++rec.swap_failures;
    if (t.u_in_avoid) ++rec.u_in_avoid_count;
    if (t.invariance_checked) {
      ++rec.invariance_checks;
      if (t.invariance_passed) ++rec.invariance_passes;
    }
  }
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

TrialResult count_trial(const RbParams& params, std::uint64_t budget) {
  const Instance inst = gen_instance(params);
  const auto report = solve(inst, SolveOptions{SolveMode::kCount, 1, budget});
  TrialResult t;
  t.status = report.status;
  t.count = report.count;
  t.nodes = report.nodes;
  return t;
}

// Avoid set: the first `size` entries of a seeded permutation of the domain.
AvoidSet draw_avoid_set(std::uint64_t seed, int d, int size) {
  auto rng = rng_stream(seed, StreamPurpose::kHarness, 2);
  const auto perm = rng.permutation(d);
  return AvoidSet(perm.begin(), perm.begin() + std::min(size, d));
}

std::optional<int> draw_branch_variable(const Instance& inst, std::uint64_t seed) {
  std::vector<int> constrained;
  std::vector<bool> seen(static_cast<std::size_t>(inst.n()), false);
  for (const auto& c : inst.constraints) {
    for (int v : c.scope) seen[v] = true;
  }
  for (int v = 0; v < inst.n(); ++v) {
    if (seen[v]) constrained.push_back(v);
  }
  if (constrained.empty()) return std::nullopt;
  auto rng = rng_stream(seed, StreamPurpose::kHarness, 1);
  return constrained[rng.bounded(constrained.size())];
}

TrialResult flip_trial(const RbParams& params, int avoid_size, std::uint64_t budget) {
  const Instance inst = gen_instance(params);
  const auto report = solve(inst, SolveOptions{SolveMode::kCount, 2, budget});
  TrialResult t;
  t.status = report.status;
  t.count = report.count;
  t.nodes = report.nodes;
  if (report.status == SolveStatus::kBudgetExhausted || *report.count > 1) return t;

  const auto x = draw_branch_variable(inst, params.seed);
  if (!x) return t;
  const AvoidSet avoid = draw_avoid_set(params.seed, params.d, avoid_size);
  const bool sat = *report.count == 1;
  (sat ? t.s2u_attempt : t.u2s_attempt) = true;
  try {
    auto [post, outcome] = sat ? flip_sat_to_unsat(inst, report.solutions.front(), *x, avoid, budget)
                               : flip_unsat_to_sat(inst, *x, avoid, budget);
    t.success = outcome.changed_satisfiability();
    t.witness_ok = outcome.witness_satisfies_post;
    t.class_exit = outcome.post_count && *outcome.post_count > 1;
    t.u_in_avoid = outcome.u_in_avoid;
    if (!avoid.empty() && !outcome.u_in_avoid) {
      t.invariance_checked = true;
      t.invariance_passed = outcome.subproblems_unchanged;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoSwapPair && e.code() != ErrorCode::kNoSelfUnsatConstraint &&
        e.code() != ErrorCode::kBudgetExhausted) {
      throw;
    }
    t.swap_failure = true;
  }
  return t;
}

}  // namespace

void SweepConfig::validate() const {
  if (steps < 1) throw Error(ErrorCode::kInvalidArgument, "steps must be at least 1");
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  if (jobs < 1) throw Error(ErrorCode::kInvalidArgument, "jobs must be at least 1");
  if (r_factors.empty() && !(r_min > 0.0 && r_max >= r_min)) {
    throw Error(ErrorCode::kInvalidArgument, "need 0 < r_min <= r_max");
  }
}

std::vector<double> SweepConfig::r_grid(double r_cr) const {
  std::vector<double> grid;
  if (!r_factors.empty()) {
    for (double f : r_factors) grid.push_back(f * r_cr);
  } else if (steps == 1) {
    grid.push_back(r_min);
  } else {
    for (int i = 0; i < steps; ++i) {
      grid.push_back(r_min + (r_max - r_min) * i / (steps - 1));
    }
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

std::uint64_t trial_seed(std::uint64_t run_seed, std::uint64_t index) {
  return rng_stream(run_seed, StreamPurpose::kHarness, index).next();
}

RbParams point_params(const SweepConfig& config, std::uint64_t seed, std::optional<double> r) {
  DensityMode mode;
  mode.explicit_r = r;
  mode.explicit_d = config.d;
  return derive_params(config.n, config.alpha, config.p, config.k, seed, mode);
}

std::vector<ExperimentRecord> run_phase_sweep(const SweepConfig& config) {
  config.validate();
  const RbParams reference = point_params(config, config.seed);
  std::vector<ExperimentRecord> records;
  for (double r : config.r_grid(reference.r_cr)) {
    const auto start = Clock::now();
    const RbParams point = point_params(config, config.seed, r);
    const auto results = run_trials(config.trials, config.jobs, [&](int i) {
      RbParams params = point;
      params.seed = trial_seed(config.seed, static_cast<std::uint64_t>(i));
      return count_trial(params, config.budget);
    });
    ExperimentRecord rec = make_record("sweep", point, config);
    accumulate(rec, results);
    if (config.record_timing) rec.wall_seconds = seconds_since(start);
    records.push_back(std::move(rec));
  }
  return records;
}

ExperimentRecord run_threshold_suite(const SweepConfig& config) {
  config.validate();
  const auto start = Clock::now();
  const RbParams point = point_params(config, config.seed);
  const auto results = run_trials(config.trials, config.jobs, [&](int i) {
    RbParams params = point;
    params.seed = trial_seed(config.seed, static_cast<std::uint64_t>(i));
    const Instance inst = gen_instance(params);
    TrialResult t;
    const auto report = solve(inst, SolveOptions{SolveMode::kCount, 1, config.budget});
    t.status = report.status;
    t.count = report.count;
    t.nodes = report.nodes;
    const auto near = near_solutions(inst, 0, SolveOptions{SolveMode::kCount, 1, config.budget});
    t.near_count = near.count;
    if (report.status == SolveStatus::kUnsat) {
      try {
        t.self_unsat_formula = self_unsat_analysis(inst, config.budget).is_self_unsat_formula;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kBudgetExhausted) throw;
      }
    }
    return t;
  });
  ExperimentRecord rec = make_record("threshold", point, config);
  accumulate(rec, results);
  if (config.record_timing) rec.wall_seconds = seconds_since(start);
  return rec;
}

std::vector<ExperimentRecord> run_flip_suite(const SweepConfig& config) {
  config.validate();
  if (config.k != 2) throw Error(ErrorCode::kUnsupportedArity, "flip suite requires k = 2");
  const RbParams point = point_params(config, config.seed);
  std::vector<int> sizes = config.avoid_sizes;
  if (sizes.empty()) {
    sizes = {0, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(point.d))))};
  }
  std::vector<ExperimentRecord> records;
  for (int size : sizes) {
    const auto start = Clock::now();
    const auto results = run_trials(config.trials, config.jobs, [&](int i) {
      RbParams params = point;
      params.seed = trial_seed(config.seed, static_cast<std::uint64_t>(i));
      return flip_trial(params, size, config.budget);
    });
    ExperimentRecord rec = make_record("flip", point, config);
    rec.avoid_size = size;
    accumulate(rec, results);
    if (config.record_timing) rec.wall_seconds = seconds_since(start);
    records.push_back(std::move(rec));
  }
  return records;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

using Field = std::variant<std::string ExperimentRecord::*, int ExperimentRecord::*,
                           long long ExperimentRecord::*, double ExperimentRecord::*,
                           std::uint64_t ExperimentRecord::*>;

struct Column {
  const char* name;
  Field field;
};

const std::vector<Column>& columns() {
  using R = ExperimentRecord;
  static const std::vector<Column> cols = {
      {"suite", &R::suite},
      {"n", &R::n},
      {"d", &R::d},
      {"k", &R::k},
      {"p", &R::p},
      {"p_eff", &R::p_eff},
      {"alpha", &R::alpha},
      {"r", &R::r},
      {"m", &R::m},
      {"seed", &R::seed},
      {"avoid_size", &R::avoid_size},
      {"trials", &R::trials},
      {"sat_count", &R::sat_count},
      {"unsat_count", &R::unsat_count},
      {"budget_exhausted_count", &R::budget_exhausted_count},
      {"unique_solution_count", &R::unique_solution_count},
      {"counted_trials", &R::counted_trials},
      {"solution_count_sum", &R::solution_count_sum},
      {"solution_count_sq_sum", &R::solution_count_sq_sum},
      {"near_trials", &R::near_trials},
      {"near_count_sum", &R::near_count_sum},
      {"near_count_sq_sum", &R::near_count_sq_sum},
      {"self_unsat_formula_count", &R::self_unsat_formula_count},
      {"flip_s2u_attempts", &R::flip_s2u_attempts},
      {"flip_s2u_success", &R::flip_s2u_success},
      {"flip_u2s_attempts", &R::flip_u2s_attempts},
      {"flip_u2s_success", &R::flip_u2s_success},
      {"u2s_witness_ok", &R::u2s_witness_ok},
      {"class_exit_count", &R::class_exit_count},
      {"swap_failures", &R::swap_failures},
      {"u_in_avoid_count", &R::u_in_avoid_count},
      {"invariance_checks", &R::invariance_checks},
      {"invariance_passes", &R::invariance_passes},
      {"total_nodes", &R::total_nodes},
      {"wall_seconds", &R::wall_seconds},
  };
  return cols;
}

// Derived frequencies appended after the stored columns; ignored on load.
constexpr const char* kDerivedHeader =
    "pr_sat,pr_sat_lo,pr_sat_hi,pr_unique,pr_unique_lo,pr_unique_hi,"
    "pr_self_unsat,pr_self_unsat_lo,pr_self_unsat_hi,s2u_rate,s2u_lo,s2u_hi,"
    "u2s_rate,u2s_lo,u2s_hi,mean_nodes";

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_field(const ExperimentRecord& rec, const Field& field) {
  return std::visit(
      [&](auto member) -> std::string {
        using T = std::remove_cvref_t<decltype(rec.*member)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return rec.*member;
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(rec.*member);
        } else {
          return std::to_string(rec.*member);
        }
      },
      field);
}

void parse_field(ExperimentRecord& rec, const Field& field, const std::string& text) {
  std::visit(
      [&](auto member) {
        using T = std::remove_cvref_t<decltype(rec.*member)>;
        if constexpr (std::is_same_v<T, std::string>) {
          rec.*member = text;
        } else if constexpr (std::is_same_v<T, double>) {
          rec.*member = std::stod(text);
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          rec.*member = std::stoull(text);
        } else if constexpr (std::is_same_v<T, long long>) {
          rec.*member = std::stoll(text);
        } else {
          rec.*member = std::stoi(text);
        }
      },
      field);
}

std::string build_header() {
  std::string header = "schema";
  for (const auto& col : columns()) {
    header += ',';
    header += col.name;
  }
  header += ',';
  header += kDerivedHeader;
  return header;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

const char* const kRecordCsvHeader = [] {
  static const std::string header = build_header();
  return header.c_str();
}();

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::string out = build_header();
  out += '\n';
  for (const auto& rec : records) {
    out += std::to_string(kRecordSchemaVersion);
    for (const auto& col : columns()) {
      out += ',';
      out += format_field(rec, col.field);
    }
    for (const Interval& iv : {rec.pr_sat(), rec.pr_unique(), rec.pr_self_unsat_given_unsat(),
                               rec.s2u_success(), rec.u2s_success()}) {
      out += ',' + format_double(iv.estimate) + ',' + format_double(iv.lo) + ',' +
             format_double(iv.hi);
    }
    out += ',' + format_double(rec.mean_nodes());
    out += '\n';
  }
  return out;
}

std::vector<ExperimentRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "empty record file");
  if (line != build_header()) {
    throw Error(ErrorCode::kSchemaVersion, "record CSV header does not match schema 1");
  }
  const auto& cols = columns();
  std::vector<ExperimentRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() < cols.size() + 1) throw Error(ErrorCode::kParse, "short record row");
    if (cells[0] != std::to_string(kRecordSchemaVersion)) {
      throw Error(ErrorCode::kSchemaVersion, "record schema " + cells[0] + " unsupported");
    }
    ExperimentRecord rec;
    try {
      for (std::size_t i = 0; i < cols.size(); ++i) parse_field(rec, cols[i].field, cells[i + 1]);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse, "bad number in record row");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string records_to_json(const std::vector<ExperimentRecord>& records) {
  Json j;
  j["schema"] = kRecordSchemaVersion;
  Json arr = Json::array();
  for (const auto& rec : records) {
    Json rj;
    for (const auto& col : columns()) {
      std::visit([&](auto member) { rj[col.name] = rec.*member; }, col.field);
    }
    arr.push_back(std::move(rj));
  }
  j["records"] = std::move(arr);
  return j.dump(1) + "\n";
}

std::vector<ExperimentRecord> records_from_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    if (j.at("schema").get<int>() != kRecordSchemaVersion) {
      throw Error(ErrorCode::kSchemaVersion, "record JSON schema unsupported");
    }
    std::vector<ExperimentRecord> records;
    for (const auto& rj : j.at("records")) {
      ExperimentRecord rec;
      for (const auto& col : columns()) {
        std::visit(
            [&](auto member) {
              using T = std::remove_cvref_t<decltype(rec.*member)>;
              rec.*member = rj.at(col.name).get<T>();
            },
            col.field);
      }
      records.push_back(std::move(rec));
    }
    return records;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed record JSON: ") + e.what());
  }
}

void persist(const std::vector<ExperimentRecord>& records, const std::string& path,
             RecordFormat format) {
  write_file(path, format == RecordFormat::kCsv ? records_to_csv(records)
                                                : records_to_json(records));
}

std::vector<ExperimentRecord> load_records(const std::string& path) {
  const std::string text = read_file(path);
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return json ? records_from_json(text) : records_from_csv(text);
}

}  // namespace rb
