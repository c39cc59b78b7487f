#include "rb/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "rb/error.hpp"

namespace rb {
namespace {

class Backtracker {
 public:
  Backtracker(const Csp& csp, const SolveOptions& options)
      : csp_(csp), options_(options), assignment_(static_cast<std::size_t>(csp.n), 0) {
    checks_at_.resize(static_cast<std::size_t>(csp.n));
    for (std::size_t i = 0; i < csp.constraints.size(); ++i) {
      const auto& c = csp.constraints[i];
      if (c.scope.empty()) {
        if (!c.relation.contains_index(0)) root_conflict_ = true;
        continue;
      }
      const int last = *std::max_element(c.scope.begin(), c.scope.end());
      checks_at_[last].push_back(i);
    }
  }

  SolveReport run() {
    SolveReport report;
    report.mode = options_.mode;
    report.cap = options_.cap;
    if (!root_conflict_) {
      if (csp_.n == 0) {
        record_solution();
      } else {
        descend(0);
      }
    }
    report.nodes = nodes_;
    report.solutions = std::move(solutions_);
    if (exhausted_) {
      report.status = SolveStatus::kBudgetExhausted;
      return report;
    }
    report.status = found_ > 0 ? SolveStatus::kSat : SolveStatus::kUnsat;
    if (options_.mode == SolveMode::kCount) report.count = found_;
    return report;
  }

 private:
  bool consistent(int var) const {
    for (std::size_t ci : checks_at_[var]) {
      const auto& c = csp_.constraints[ci];
      std::size_t index = 0;
      for (int v : c.scope) {
        index = index * static_cast<std::size_t>(csp_.d) + static_cast<std::size_t>(assignment_[v]);
      }
      if (!c.relation.contains_index(index)) return false;
    }
    return true;
  }

  void record_solution() {
    ++found_;
    if (solutions_.size() < options_.cap) solutions_.push_back(assignment_);
    if (options_.mode == SolveMode::kDecide) stop_ = true;
    if (options_.mode == SolveMode::kEnumerate && solutions_.size() >= options_.cap) stop_ = true;
  }

  void descend(int var) {
    for (int value = 0; value < csp_.d; ++value) {
      if (++nodes_ > options_.budget) {
        exhausted_ = true;
        stop_ = true;
        return;
      }
      assignment_[var] = value;
      if (!consistent(var)) continue;
      if (var + 1 == csp_.n) {
        record_solution();
      } else {
        descend(var + 1);
      }
      if (stop_) return;
    }
  }

  const Csp& csp_;
  const SolveOptions& options_;
  std::vector<std::vector<std::size_t>> checks_at_;
  Assignment assignment_;
  std::vector<Assignment> solutions_;
  std::uint64_t nodes_ = 0;
  std::uint64_t found_ = 0;
  bool root_conflict_ = false;
  bool stop_ = false;
  bool exhausted_ = false;
};

void check_oracle_guard(int n, int d) {
  const double log_space = n * std::log10(static_cast<double>(d));
  if (log_space > 7.0 + 1e-12) {
    throw Error(ErrorCode::kOracleGuard, "brute force limited to d^n <= 10^7");
  }
}

// Advances a base-d odometer; false when it wraps to all zeros.
bool advance(Assignment& a, int d) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (++a[i] < d) return true;
    a[i] = 0;
  }
  return false;
}

}  // namespace

bool Csp::satisfies(std::size_t constraint_index, const Assignment& assignment) const {
  const auto& c = constraints.at(constraint_index);
  std::vector<int> t;
  t.reserve(c.scope.size());
  for (int v : c.scope) t.push_back(assignment.at(v));
  return c.relation.contains(t);
}

bool Csp::is_solution(const Assignment& assignment) const {
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!satisfies(i, assignment)) return false;
  }
  return true;
}

Csp to_csp(const Instance& instance) {
  Csp csp;
  csp.n = instance.n();
  csp.d = instance.d();
  csp.constraints.reserve(instance.constraints.size());
  for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
    csp.constraints.push_back({instance.constraints[i].scope, instance.materialize(i)});
  }
  return csp;
}

std::string canonical_form(const Csp& csp) {
  nlohmann::ordered_json j;
  j["n"] = csp.n;
  j["d"] = csp.d;
  auto constraints = nlohmann::ordered_json::array();
  for (const auto& c : csp.constraints) {
    nlohmann::ordered_json cj;
    cj["scope"] = c.scope;
    cj["tuples"] = c.relation.tuples();
    constraints.push_back(std::move(cj));
  }
  j["constraints"] = std::move(constraints);
  return j.dump();
}

const char* to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::kDecide:
      return "decide";
    case SolveMode::kCount:
      return "count";
    case SolveMode::kEnumerate:
      return "enumerate";
  }
  return "?";
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSat:
      return "SAT";
    case SolveStatus::kUnsat:
      return "UNSAT";
    case SolveStatus::kBudgetExhausted:
      return "BUDGET_EXHAUSTED";
  }
  return "?";
}

SolveReport solve(const Csp& csp, const SolveOptions& options) {
  return Backtracker(csp, options).run();
}

SolveReport solve(const Instance& instance, const SolveOptions& options) {
  return solve(to_csp(instance), options);
}

std::uint64_t brute_force_count(const Instance& instance) {
  check_oracle_guard(instance.n(), instance.d());
  // Pull assignments back through inverse permutations onto the base relation.
  std::vector<std::vector<Permutation>> inverses;
  for (const auto& c : instance.constraints) {
    auto& inv = inverses.emplace_back();
    for (const auto& perm : c.perms) inv.push_back(inverse(perm));
  }
  Assignment a(static_cast<std::size_t>(instance.n()), 0);
  std::vector<int> pre(static_cast<std::size_t>(instance.k()));
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < instance.constraints.size() && ok; ++i) {
      const auto& scope = instance.constraints[i].scope;
      for (std::size_t j = 0; j < scope.size(); ++j) pre[j] = inverses[i][j][a[scope[j]]];
      ok = instance.base.contains(pre);
    }
    if (ok) ++count;
  } while (advance(a, instance.d()));
  return count;
}

std::uint64_t brute_force_count(const Csp& csp) {
  check_oracle_guard(csp.n, csp.d);
  Assignment a(static_cast<std::size_t>(csp.n), 0);
  std::uint64_t count = 0;
  do {
    if (csp.is_solution(a)) ++count;
  } while (advance(a, csp.d));
  return count;
}

Csp restrict(const Csp& csp, int var, int value) {
  if (var < 0 || var >= csp.n) throw Error(ErrorCode::kInvalidArgument, "variable out of range");
  if (value < 0 || value >= csp.d) throw Error(ErrorCode::kInvalidArgument, "value out of range");
  Csp sub;
  sub.n = csp.n - 1;
  sub.d = csp.d;
  sub.constraints.reserve(csp.constraints.size());
  for (const auto& c : csp.constraints) {
    TableConstraint out;
    const auto pos = std::find(c.scope.begin(), c.scope.end(), var);
    if (pos == c.scope.end()) {
      out.relation = c.relation;
    } else {
      out.relation = c.relation.project(static_cast<int>(pos - c.scope.begin()), value);
    }
    for (int v : c.scope) {
      if (v != var) out.scope.push_back(v > var ? v - 1 : v);
    }
    sub.constraints.push_back(std::move(out));
  }
  return sub;
}

Csp restrict(const Instance& instance, int var, int value) {
  return restrict(to_csp(instance), var, value);
}

NearSolutionReport near_solutions(const Instance& instance, std::size_t constraint_index,
                                  const SolveOptions& options) {
  if (constraint_index >= instance.constraints.size()) {
    throw Error(ErrorCode::kInvalidArgument, "constraint index out of range");
  }
  Csp csp = to_csp(instance);
  auto& target = csp.constraints[constraint_index].relation;
  target = target.complement();

  SolveOptions opts = options;
  opts.cap = std::max<std::size_t>(opts.cap, 1);
  const SolveReport sr = solve(csp, opts);

  NearSolutionReport report;
  report.constraint_index = constraint_index;
  report.status = sr.status;
  report.count = sr.count;
  report.nodes = sr.nodes;
  if (!sr.solutions.empty()) report.witness = sr.solutions.front();
  return report;
}

SelfUnsatReport self_unsat_analysis(const Instance& instance, std::uint64_t budget) {
  const auto exhausted = [] {
    return Error(ErrorCode::kBudgetExhausted, "node budget exhausted during self-unsat analysis");
  };
  SolveOptions decide{SolveMode::kDecide, 1, budget};

  SelfUnsatReport report;
  const SolveReport whole = solve(instance, decide);
  if (whole.status == SolveStatus::kBudgetExhausted) throw exhausted();
  report.unsat = whole.status == SolveStatus::kUnsat;

  report.per_constraint.assign(instance.constraints.size(), false);
  report.per_variable.assign(static_cast<std::size_t>(instance.n()), false);
  for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
    const auto near = near_solutions(instance, i, decide);
    if (near.status == SolveStatus::kBudgetExhausted) throw exhausted();
    report.per_constraint[i] = near.status == SolveStatus::kSat;
    if (report.per_constraint[i]) {
      for (int v : instance.constraints[i].scope) report.per_variable[v] = true;
    }
  }
  report.is_self_unsat_formula =
      report.unsat && std::all_of(report.per_variable.begin(), report.per_variable.end(),
                                  [](bool flag) { return flag; });
  return report;
}

DegreeReport degree_stats(const Instance& instance) {
  DegreeReport report;
  report.degrees.assign(static_cast<std::size_t>(instance.n()), 0);
  for (const auto& c : instance.constraints) {
    for (int v : c.scope) ++report.degrees[v];
  }
  report.min = report.degrees.empty()
                   ? 0
                   : *std::min_element(report.degrees.begin(), report.degrees.end());
  const long total = std::accumulate(report.degrees.begin(), report.degrees.end(), 0L);
  report.mean = instance.n() > 0 ? static_cast<double>(total) / instance.n() : 0.0;
  const auto& p = instance.params;
  report.threshold = p.r * p.k * std::log(static_cast<double>(p.d)) / 100.0;
  report.below_threshold_count = static_cast<int>(
      std::count_if(report.degrees.begin(), report.degrees.end(),
                    [&](int deg) { return deg <= report.threshold; }));
  return report;
}

}  // namespace rb
