#include "rb/symmetry.hpp"

#include <algorithm>
#include <string>

#include "rb/error.hpp"

namespace rb {
namespace {

class Oriented {
 public:
  Oriented(const Relation& rel, int coord) : rel_(rel), coord_(coord) {}

  bool allowed(int own, int partner) const {
    const int t[2] = {coord_ == 0 ? own : partner, coord_ == 0 ? partner : own};
    return rel_.contains(t);
  }

 private:
  const Relation& rel_;
  int coord_;
};

void require_binary(const Instance& instance) {
  if (instance.k() != 2) {
    throw Error(ErrorCode::kUnsupportedArity, "symmetry mapping is defined for k = 2 only");
  }
}

struct Located {
  std::size_t constraint_index;
  int coord;
};

std::vector<Located> constraints_containing(const Instance& instance, int x) {
  std::vector<Located> out;
  for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
    const auto& scope = instance.constraints[i].scope;
    const auto pos = std::find(scope.begin(), scope.end(), x);
    if (pos != scope.end()) out.push_back({i, static_cast<int>(pos - scope.begin())});
  }
  if (out.empty()) {
    throw Error(ErrorCode::kVariableUnconstrained,
                "variable " + std::to_string(x) + " occurs in no constraint");
  }
  return out;
}

SolveReport count_upto_two(const Instance& instance, std::uint64_t budget) {
  return solve(instance, SolveOptions{SolveMode::kCount, 2, budget});
}

void record_post(FlipOutcome& outcome, const Instance& pre, const Instance& post, int x,
                 std::uint64_t budget) {
  const auto post_report = count_upto_two(post, budget);
  outcome.post_status = post_report.status;
  outcome.post_count = post_report.count;
  outcome.witness_satisfies_post = post.is_solution(outcome.witness);
  outcome.u_in_avoid = outcome.avoid_set.contains(outcome.swap.u);
  outcome.subproblems_unchanged = subproblem_invariance_check(pre, post, x, outcome.avoid_set);
}

}  // namespace

const char* to_string(FlipDirection direction) {
  return direction == FlipDirection::kSatToUnsat ? "sat_to_unsat" : "unsat_to_sat";
}

SwapPair find_swap_pair(const Relation& relation, int coord, int u, int v,
                        FlipDirection direction, const AvoidSet& avoid) {
  if (relation.arity() != 2) {
    throw Error(ErrorCode::kUnsupportedArity, "swap pairs are defined for binary relations");
  }
  if (coord < 0 || coord > 1) throw Error(ErrorCode::kInvalidArgument, "coord must be 0 or 1");
  const int d = relation.domain();
  const Oriented rel(relation, coord);
  const bool sat_to_unsat = direction == FlipDirection::kSatToUnsat;
  if (rel.allowed(u, v) != sat_to_unsat) {
    throw Error(ErrorCode::kInvalidArgument,
                sat_to_unsat ? "tuple (u,v) must be allowed" : "tuple (u,v) must be forbidden");
  }

  for (int u2 = 0; u2 < d; ++u2) {
    if (u2 == u || avoid.contains(u2)) continue;
    if (sat_to_unsat ? rel.allowed(u2, v) : !rel.allowed(u2, v)) continue;
    for (int v2 = 0; v2 < d; ++v2) {
      const bool ok = sat_to_unsat
                          ? rel.allowed(u2, v2) && !rel.allowed(u, v2)
                          : rel.allowed(u, v2) && !rel.allowed(u2, v2);
      if (ok) return SwapPair{u, u2, v, v2, 0, coord};
    }
  }
  throw Error(ErrorCode::kNoSwapPair, "no swap pair outside the avoid set");
}

Instance apply_symmetry_mapping(const Instance& instance, std::size_t constraint_index,
                                int coord, int u, int u_prime) {
  require_binary(instance);
  if (constraint_index >= instance.constraints.size()) {
    throw Error(ErrorCode::kInvalidArgument, "constraint index out of range");
  }
  const int d = instance.d();
  if (coord < 0 || coord > 1 || u < 0 || u >= d || u_prime < 0 || u_prime >= d || u == u_prime) {
    throw Error(ErrorCode::kInvalidArgument, "symmetry mapping needs distinct u, u' in range");
  }
  Instance out = instance;
  for (auto& value : out.constraints[constraint_index].perms[coord]) {
    if (value == u) {
      value = u_prime;
    } else if (value == u_prime) {
      value = u;
    }
  }
  if (out.planted && !out.is_solution(*out.planted)) out.planted.reset();
  return out;
}

std::pair<Instance, FlipOutcome> flip_sat_to_unsat(const Instance& instance,
                                                   const Assignment& solution, int x,
                                                   const AvoidSet& avoid, std::uint64_t budget) {
  require_binary(instance);
  if (!instance.is_solution(solution)) {
    throw Error(ErrorCode::kInvalidArgument, "assignment is not a solution");
  }
  const Located where = constraints_containing(instance, x).front();
  const auto& scope = instance.constraints[where.constraint_index].scope;
  const int partner = scope[1 - where.coord];

  FlipOutcome outcome;
  outcome.direction = FlipDirection::kSatToUnsat;
  outcome.avoid_set = avoid;
  outcome.witness = solution;
  outcome.swap = find_swap_pair(instance.materialize(where.constraint_index), where.coord,
                                solution[x], solution[partner], outcome.direction, avoid);
  outcome.swap.constraint_index = where.constraint_index;

  const auto pre_report = count_upto_two(instance, budget);
  outcome.pre_status = pre_report.status;
  outcome.pre_count = pre_report.count;

  Instance post = apply_symmetry_mapping(instance, where.constraint_index, where.coord,
                                         outcome.swap.u, outcome.swap.u_prime);
  record_post(outcome, instance, post, x, budget);
  return {std::move(post), std::move(outcome)};
}

std::pair<Instance, FlipOutcome> flip_unsat_to_sat(const Instance& instance, int x,
                                                   const AvoidSet& avoid, std::uint64_t budget) {
  require_binary(instance);
  const auto candidates = constraints_containing(instance, x);

  FlipOutcome outcome;
  outcome.direction = FlipDirection::kUnsatToSat;
  outcome.avoid_set = avoid;

  const auto pre_report = count_upto_two(instance, budget);
  outcome.pre_status = pre_report.status;
  outcome.pre_count = pre_report.count;
  if (pre_report.status == SolveStatus::kSat) {
    throw Error(ErrorCode::kInvalidArgument, "unsat_to_sat flip needs an unsatisfiable instance");
  }
  if (pre_report.status == SolveStatus::kBudgetExhausted) {
    throw Error(ErrorCode::kBudgetExhausted, "node budget exhausted before the flip");
  }

  const SolveOptions decide{SolveMode::kDecide, 1, budget};
  for (const auto& where : candidates) {
    const auto near = near_solutions(instance, where.constraint_index, decide);
    if (near.status == SolveStatus::kBudgetExhausted) {
      throw Error(ErrorCode::kBudgetExhausted, "node budget exhausted in near-solution search");
    }
    if (!near.witness) continue;

    const auto& tau = *near.witness;
    const int partner = instance.constraints[where.constraint_index].scope[1 - where.coord];
    outcome.witness = tau;
    outcome.swap = find_swap_pair(instance.materialize(where.constraint_index), where.coord,
                                  tau[x], tau[partner], outcome.direction, avoid);
    outcome.swap.constraint_index = where.constraint_index;

    Instance post = apply_symmetry_mapping(instance, where.constraint_index, where.coord,
                                           outcome.swap.u, outcome.swap.u_prime);
    record_post(outcome, instance, post, x, budget);
    return {std::move(post), std::move(outcome)};
  }
  throw Error(ErrorCode::kNoSelfUnsatConstraint,
              "no self-unsatisfiable constraint contains variable " + std::to_string(x));
}

bool subproblem_invariance_check(const Instance& pre, const Instance& post, int x,
                                 const AvoidSet& avoid) {
  if (avoid.empty()) return true;
  const Csp pre_csp = to_csp(pre);
  const Csp post_csp = to_csp(post);
  for (int v : avoid) {
    if (canonical_form(restrict(pre_csp, x, v)) != canonical_form(restrict(post_csp, x, v))) {
      return false;
    }
  }
  return true;
}

std::optional<int> first_constrained_variable(const Instance& instance) {
  std::optional<int> best;
  for (const auto& c : instance.constraints) {
    for (int v : c.scope) {
      if (!best || v < *best) best = v;
    }
  }
  return best;
}

FixedPointTrace fixed_point_trial(const Instance& instance, int rounds, std::optional<int> x,
                                  const AvoidSet& avoid, std::uint64_t budget) {
  require_binary(instance);
  const auto start = count_upto_two(instance, budget);
  if (start.status == SolveStatus::kBudgetExhausted) {
    throw Error(ErrorCode::kBudgetExhausted, "node budget exhausted classifying the instance");
  }
  if (*start.count > 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "fixed-point trial needs an instance with at most one solution");
  }
  const int var = x ? *x : first_constrained_variable(instance).value_or(0);

  FixedPointTrace trace;
  trace.final_instance = instance;
  SolveReport current = start;
  for (int round = 0; round < rounds; ++round) {
    auto [post, outcome] =
        current.status == SolveStatus::kSat
            ? flip_sat_to_unsat(trace.final_instance, current.solutions.front(), var, avoid, budget)
            : flip_unsat_to_sat(trace.final_instance, var, avoid, budget);
    trace.steps.push_back(outcome);
    trace.final_instance = std::move(post);
    if (outcome.post_status == SolveStatus::kBudgetExhausted) {
      trace.budget_exhausted = true;
      break;
    }
    if (*outcome.post_count > 1) {
      trace.exited_class = true;
      break;
    }
    current = count_upto_two(trace.final_instance, budget);
  }
  return trace;
}

}  // namespace rb
