// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rb/analytics.hpp"
#include "rb/encode.hpp"
#include "rb/error.hpp"
#include "rb/harness.hpp"
#include "rb/search.hpp"
#include "rb/serialize.hpp"
#include "rb/symmetry.hpp"

namespace {

using namespace rb;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr int kReference[][2] = {{8, 8}, {10, 10}, {12, 12}};

RbParams at(int n, int d, std::uint64_t seed, double p = 0.5, int k = 2) {
  DensityMode mode;
  mode.explicit_d = d;
  return derive_params(n, 1.0, p, k, seed, mode);
}

struct Sample {
  double sum = 0.0;
  double sq = 0.0;
  long long count = 0;
  void add(double x) {
    sum += x;
    sq += x * x;
    ++count;
  }
  double mean() const { return sum / count; }
  double se() const {
    const double var = (sq - sum * sum / count) / (count - 1);
    return std::sqrt(std::max(var, 0.0) / count);
  }
};

Verdict oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Xoshiro256 rng(2024);
  int mismatches = 0;
  std::uint64_t total = 0;
  for (int i = 0; i < 200; ++i) {
    const auto inst = gen_instance(testing::tiny_params(rng, 10'000 + i));
    const auto count = *solve(inst).count;
    total += count;
    if (count != testing::solutions_by_definition(inst) || count != brute_force_count(inst)) {
      ++mismatches;
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60.0,
          fmt("200 instances, %d mismatches, %llu solutions total, %.2fs", mismatches,
              static_cast<unsigned long long>(total), secs)};
}

Verdict regularity() {
  Xoshiro256 rng(7);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const int k = 2 + static_cast<int>(rng.bounded(3));
    const int d = 2 + static_cast<int>(rng.bounded(k == 2 ? 15 : 6));
    const int b = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(d - 1)));
    Relation rel = Relation::circulant(d, k, b);
    // Materialize under random permutations of every coordinate.
    for (int j = 0; j < k; ++j) rel = rel.apply_permutation(j, rng.permutation(d));
    long long expected = b;
    for (int j = 0; j < k - 2; ++j) expected *= d;
    std::vector<std::vector<long long>> degree(k, std::vector<long long>(d, 0));
    for (const auto& t : rel.tuples())
      for (int j = 0; j < k; ++j) ++degree[j][t[j]];
    for (const auto& row : degree)
      for (long long deg : row) failures += deg != expected;
  }
  return {failures == 0, fmt("1000 relations, %d off-degree (coordinate, value) cells", failures)};
}

// Monte Carlo instances shared by the first- and near-solution checks.
struct TinyMoments {
  RbParams params;
  Sample solutions;
  Sample near;
  double seconds = 0.0;
};

const TinyMoments& tiny_moments() {
  static const TinyMoments result = [] {
    TinyMoments r;
    const auto t0 = std::chrono::steady_clock::now();
    r.params = at(5, 4, 0);
    for (std::uint64_t i = 0; i < 20000; ++i) {
      auto params = r.params;
      params.seed = trial_seed(99, i);
      const auto inst = gen_instance(params);
      r.solutions.add(static_cast<double>(*solve(inst).count));
      r.near.add(static_cast<double>(*near_solutions(inst, 0).count));
    }
    r.seconds = seconds_since(t0);
    return r;
  }();
  return result;
}

Verdict first_moment() {
  Xoshiro256 rng(31);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 5 + static_cast<int>(rng.bounded(500));
    const double alpha = 0.3 + 0.9 * rng.uniform();
    const double p = 0.1 + 0.8 * rng.uniform();
    const int k = 2 + static_cast<int>(rng.bounded(3));
    RbParams params;
    try {
      params = derive_params(n, alpha, p, k, 0);
    } catch (const Error&) {
      --i;
      continue;
    }
    worst = std::max(worst, std::abs(expected_solution_count(params, MomentBasis::kUnrounded) - 0.5) / 0.5);
  }
  const auto& mc = tiny_moments();
  const double ex = expected_solution_count(mc.params);
  const double z = (mc.solutions.mean() - ex) / mc.solutions.se();
  return {worst <= 1e-9 && std::abs(z) <= 3.0 && mc.seconds < 300.0,
          fmt("unrounded max rel err %.2e over 50 draws; MC n=5 d=4 m=%d: mean %.4f vs %.4f "
              "(z=%.2f, %lld instances, %.1fs)",
              worst, mc.params.m, mc.solutions.mean(), ex, z, mc.solutions.count, mc.seconds)};
}

Verdict near_moment() {
  Xoshiro256 rng(32);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    auto params = derive_params(4 + static_cast<int>(rng.bounded(60)), 0.5 + 0.6 * rng.uniform(),
                                0.2 + 0.6 * rng.uniform(), 2, 0);
    const double ex = expected_solution_count(params);
    const double en = expected_near_solutions(params);
    worst = std::max(worst, std::abs(en - ex * params.p_eff / (1.0 - params.p_eff)) / en);
  }
  const auto& mc = tiny_moments();
  const double en = expected_near_solutions(mc.params);
  const double z = (mc.near.mean() - en) / mc.near.se();
  return {worst <= 1e-12 && std::abs(z) <= 3.0,
          fmt("identity max rel err %.2e; MC near-solutions of constraint 0: mean %.4f vs %.4f "
              "(z=%.2f)",
              worst, mc.near.mean(), en, z)};
}

Verdict moment_internals() {
  std::string detail;
  bool ok = true;
  for (const auto& [n, d] : kReference) {
    const auto report = second_moment(at(n, d, 0));
    const double product_err = std::abs(report.f_n * report.ex - 1.0);
    const double sum = std::accumulate(report.f_terms.begin(), report.f_terms.end(), 0.0);
    const bool row_ok =
        product_err <= 1e-9 && std::isfinite(sum) && sum >= report.f_zero + report.f_n;
    ok = ok && row_ok;
    detail += fmt("(%d,%d): |F(n)EX-1|=%.1e sumF=%.4g F0+Fn=%.4g; ", n, d, product_err, sum,
                  report.f_zero + report.f_n);
  }
  return {ok, detail};
}

Verdict worked_example() {
  auto params = at(2, 4, 0);
  params.b = 2;
  params.m = 1;
  const auto pre =
      make_instance(params, testing::block_relation(),
                    {Constraint{{0, 1}, {identity_permutation(4), identity_permutation(4)}}});
  const auto post = apply_symmetry_mapping(pre, 0, 0, 1, 2);
  const auto expected = Relation::from_tuples(
      2, 4, {{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {3, 2}, {3, 3}});
  const bool set_ok = post.materialize(0) == expected;
  const bool flip_ok = pre.is_solution({1, 1}) && !post.is_solution({1, 1}) &&
                       testing::violations_by_definition(post, {1, 1}).size() == 1;
  return {set_ok && flip_ok, fmt("post-mapping set %s; (1,1) satisfied->violated %s",
                                 set_ok ? "matches" : "differs", flip_ok ? "yes" : "no")};
}

struct FlipRate {
  int attempts = 0;
  int successes = 0;
  int swap_failures = 0;
  double failure_rate() const { return 1.0 - static_cast<double>(successes) / attempts; }
};

FlipRate s2u_rate(int n, int d, int wanted, std::uint64_t run_seed) {
  FlipRate rate;
  for (std::uint64_t i = 0; rate.attempts < wanted && i < 20'000; ++i) {
    auto params = at(n, d, trial_seed(run_seed, i));
    const auto inst = gen_instance(params);
    const auto report = solve(inst, {SolveMode::kCount, 2});
    if (!report.count || *report.count != 1) continue;
    ++rate.attempts;
    try {
      const auto [post, outcome] =
          flip_sat_to_unsat(inst, report.solutions.front(), *first_constrained_variable(inst));
      rate.successes += outcome.changed_satisfiability();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoSwapPair) throw;
      ++rate.swap_failures;
    }
  }
  return rate;
}

Verdict flip_verification() {
  const auto main = s2u_rate(10, 16, 100, 16);
  const auto small = s2u_rate(10, 8, 100, 8);
  const auto large = s2u_rate(10, 32, 100, 32);
  const bool majority = main.attempts >= 100 && 2 * main.successes > main.attempts;
  const bool trend = large.failure_rate() <= small.failure_rate();
  return {majority && trend,
          fmt("d=16: %d/%d unique-solution flips became UNSAT; failure rate d=8 %.3f, "
              "d=32 %.3f",
              main.successes, main.attempts, small.failure_rate(), large.failure_rate())};
}

// Restrictions agree iff every tuple through x = v keeps its membership.
bool restrictions_agree(const Instance& pre, const Instance& post, int x, const AvoidSet& avoid) {
  for (std::size_t ci = 0; ci < pre.constraints.size(); ++ci) {
    const auto& scope = pre.constraints[ci].scope;
    for (int j = 0; j < static_cast<int>(scope.size()); ++j) {
      if (scope[j] != x) continue;
      Tuple t(scope.size(), 0);
      do {
        if (!avoid.count(t[j])) continue;
        if (testing::allowed_by_definition(pre, ci, t) !=
            testing::allowed_by_definition(post, ci, t)) {
          return false;
        }
      } while (testing::next_assignment(t, pre.d()));
    }
  }
  return true;
}

struct AvoidStudy {
  int checks = 0;
  int passes = 0;
  int oracle_passes = 0;
  int u2s_applied = 0;
  int u2s_witness_ok = 0;
  int u2s_oracle_ok = 0;
};

const AvoidStudy& avoid_study() {
  static const AvoidStudy study = [] {
    AvoidStudy s;
    for (const auto& [n, d] : kReference) {
      const int size = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));
      for (std::uint64_t i = 0; i < 150; ++i) {
        const auto inst = gen_instance(at(n, d, trial_seed(777, i)));
        const auto report = solve(inst, {SolveMode::kCount, 2});
        if (!report.count || *report.count > 1) continue;
        const int x = *first_constrained_variable(inst);
        auto perm = rng_stream(i, StreamPurpose::kHarness, 5).permutation(d);
        const AvoidSet avoid(perm.begin(), perm.begin() + size);
        try {
          auto [post, outcome] =
              *report.count == 1
                  ? flip_sat_to_unsat(inst, report.solutions.front(), x, avoid)
                  : flip_unsat_to_sat(inst, x, avoid);
          if (!outcome.u_in_avoid) {
            ++s.checks;
            s.passes += outcome.subproblems_unchanged;
            s.oracle_passes += restrictions_agree(inst, post, x, avoid);
          }
          if (outcome.direction == FlipDirection::kUnsatToSat) {
            ++s.u2s_applied;
            s.u2s_witness_ok += outcome.witness_satisfies_post;
            s.u2s_oracle_ok += testing::violations_by_definition(post, outcome.witness).empty();
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNoSwapPair && e.code() != ErrorCode::kNoSelfUnsatConstraint) {
            throw;
          }
        }
      }
    }
    return s;
  }();
  return study;
}

Verdict subproblem_invariance() {
  const auto& s = avoid_study();
  return {s.checks > 0 && s.passes == s.checks && s.oracle_passes == s.checks,
          fmt("%d avoid-set flips with u,u' outside the avoid set; %d pass the check, %d agree "
              "with the tuple oracle",
              s.checks, s.passes, s.oracle_passes)};
}

Verdict unsat_to_sat_soundness() {
  const auto& s = avoid_study();
  return {s.u2s_applied > 0 && s.u2s_witness_ok == s.u2s_applied &&
              s.u2s_oracle_ok == s.u2s_applied,
          fmt("%d unsat->sat swaps applied; witness satisfies post-instance in %d (oracle %d)",
              s.u2s_applied, s.u2s_witness_ok, s.u2s_oracle_ok)};
}

Verdict encoding_bijection() {
  Xoshiro256 rng(1010);
  int tested = 0;
  int count_mismatch = 0;
  int census_mismatch = 0;
  while (tested < 100) {
    const auto params = testing::tiny_params(rng, 20'000 + tested);
    const int bits = bits_per_var(params.d);
    if (params.n * bits > 20) continue;
    const auto inst = gen_instance(params);
    const auto cnf = encode_log(inst);
    count_mismatch += testing::count_models(cnf) != *solve(inst).count;
    long long dk = 1;
    for (int j = 0; j < params.k; ++j) dk *= params.d;
    const long long census = static_cast<long long>(params.m) * (dk - params.b * dk / params.d) +
                             static_cast<long long>(params.n) * ((1LL << bits) - params.d);
    census_mismatch += static_cast<long long>(cnf.clauses.size()) != census;
    ++tested;
  }
  // Census at a larger k = 3 instance as well.
  const auto big = at(6, 5, 3, 0.5, 3);
  const auto big_cnf = encode_log(gen_instance(big));
  census_mismatch += static_cast<long long>(big_cnf.clauses.size()) !=
                     big.m * (125 - big.b * 25) + big.n * (8 - 5);
  return {count_mismatch == 0 && census_mismatch == 0,
          fmt("100 instances: %d model-count mismatches, %d census mismatches", count_mismatch,
              census_mismatch)};
}

Verdict determinism() {
  const auto params = at(12, 12, 4242);
  const auto json_a = serialize_instance(gen_instance(params));
  const auto json_b = serialize_instance(gen_instance(params));
  const auto cnf_a = to_dimacs(encode_log(gen_instance(params)));
  const auto cnf_b = to_dimacs(encode_log(parse_instance(json_b)));
  SweepConfig config;
  config.n = 8;
  config.d = 8;
  config.r_factors = {0.8, 1.0, 1.2};
  config.trials = 30;
  config.seed = 11;
  const auto csv_a = records_to_csv(run_phase_sweep(config));
  const auto csv_b = records_to_csv(run_phase_sweep(config));
  return {json_a == json_b && cnf_a == cnf_b && csv_a == csv_b,
          fmt("instance JSON %s, DIMACS %s, sweep CSV %s", json_a == json_b ? "identical" : "differs",
              cnf_a == cnf_b ? "identical" : "differs", csv_a == csv_b ? "identical" : "differs")};
}

Verdict phase_direction() {
  const auto t0 = std::chrono::steady_clock::now();
  SweepConfig config;
  config.n = 10;
  config.d = 10;
  config.p = 0.5;
  config.r_factors = {0.6, 1.4};
  config.trials = 200;
  config.seed = 12;
  const auto recs = run_phase_sweep(config);
  const double low = recs[0].pr_sat().estimate;
  const double high = recs[1].pr_sat().estimate;
  const double secs = seconds_since(t0);
  return {low >= 0.9 && high <= 0.1 && secs < 600.0,
          fmt("Pr[SAT] %.3f at 0.6 r_cr, %.3f at 1.4 r_cr (%.1fs)", low, high, secs)};
}

Verdict threshold_reporting() {
  bool ok = true;
  std::string detail;
  for (const auto& [n, d] : kReference) {
    SweepConfig config;
    config.n = n;
    config.d = d;
    config.trials = 100;
    config.seed = 13;
    const auto rec = run_threshold_suite(config);
    const auto unique = rec.pr_unique();
    const auto self = rec.pr_self_unsat_given_unsat();
    const auto valid = [](const Interval& iv) {
      return std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.lo <= iv.estimate &&
             iv.estimate <= iv.hi && iv.lo >= 0.0 && iv.hi <= 1.0;
    };
    ok = ok && valid(unique) && valid(self) &&
         rec.sat_count + rec.unsat_count + rec.budget_exhausted_count == rec.trials;
    detail += fmt("(%d,%d) unique %.2f [%.2f,%.2f] self-unsat|UNSAT %.2f [%.2f,%.2f]; ", n, d,
                  unique.estimate, unique.lo, unique.hi, self.estimate, self.lo, self.hi);
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"relation regularity", regularity},
      {"expected solution count", first_moment},
      {"expected near-solutions", near_moment},
      {"second-moment terms", moment_internals},
      {"worked symmetry example", worked_example},
      {"sat->unsat flips", flip_verification},
      {"subproblem invariance", subproblem_invariance},
      {"unsat->sat soundness", unsat_to_sat_soundness},
      {"encoding bijection", encoding_bijection},
      {"determinism", determinism},
      {"phase-transition direction", phase_direction},
      {"threshold suite reporting", threshold_reporting},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("criterion %2zu %-28s %s  %s (%.1fs)\n", i + 1, criteria[i].first,
                v.pass ? "PASS" : "FAIL", v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
