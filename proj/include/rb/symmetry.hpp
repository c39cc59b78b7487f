#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "rb/instance.hpp"
#include "rb/search.hpp"

namespace rb {

enum class FlipDirection { kSatToUnsat, kUnsatToSat };

const char* to_string(FlipDirection direction);

using AvoidSet = std::set<int>;

/// Values u, u' of the variable at scope position `coord`, with partner
/// values v, v' at the other position.
///   sat_to_unsat: (u,v), (u',v') allowed; (u,v'), (u',v) forbidden.
///   unsat_to_sat: (u,v'), (u',v) allowed; (u,v), (u',v') forbidden.
/// Exchanging u with u' then toggles the membership of (u,v).
struct SwapPair {
  int u = 0;
  int u_prime = 0;
  int v = 0;
  int v_prime = 0;
  std::size_t constraint_index = 0;
  int coord = 0;

  friend bool operator==(const SwapPair&, const SwapPair&) = default;
};

/// Smallest admissible u', then smallest v'. Throws kNoSwapPair when no
/// candidate outside `avoid` exists.
SwapPair find_swap_pair(const Relation& relation, int coord, int u, int v,
                        FlipDirection direction, const AvoidSet& avoid = {});

/// Exchanges values u and u' at position `coord` of one constraint by
/// composing that coordinate's permutation with the transposition (u u').
Instance apply_symmetry_mapping(const Instance& instance, std::size_t constraint_index,
                                int coord, int u, int u_prime);

struct FlipOutcome {
  FlipDirection direction = FlipDirection::kSatToUnsat;
  SwapPair swap;
  SolveStatus pre_status = SolveStatus::kSat;
  SolveStatus post_status = SolveStatus::kSat;
  std::optional<std::uint64_t> pre_count;
  std::optional<std::uint64_t> post_count;
  AvoidSet avoid_set;
  bool u_in_avoid = false;
  bool subproblems_unchanged = true;
  /// sigma for sat_to_unsat, tau for unsat_to_sat.
  Assignment witness;
  bool witness_satisfies_post = false;

  bool changed_satisfiability() const {
    return pre_status != SolveStatus::kBudgetExhausted &&
           post_status != SolveStatus::kBudgetExhausted && pre_status != post_status;
  }
};

/// Breaks `solution` by a swap on the first constraint containing `x`, then
/// re-solves both instances. The new status is reported, not assumed.
std::pair<Instance, FlipOutcome> flip_sat_to_unsat(const Instance& instance,
                                                   const Assignment& solution, int x,
                                                   const AvoidSet& avoid = {},
                                                   std::uint64_t budget = kDefaultNodeBudget);

/// Finds a near-solution tau whose only violated constraint contains `x` and
/// swaps so that tau becomes a solution.
std::pair<Instance, FlipOutcome> flip_unsat_to_sat(const Instance& instance, int x,
                                                   const AvoidSet& avoid = {},
                                                   std::uint64_t budget = kDefaultNodeBudget);

/// True iff restrict(pre, x, v) and restrict(post, x, v) serialize
/// identically for every v in `avoid`.
bool subproblem_invariance_check(const Instance& pre, const Instance& post, int x,
                                 const AvoidSet& avoid);

struct FixedPointTrace {
  std::vector<FlipOutcome> steps;
  bool exited_class = false;
  bool budget_exhausted = false;
  Instance final_instance;
};

/// Alternates the two flips for `rounds` steps starting from an instance with
/// at most one solution. Stops early when a step leaves that class.
FixedPointTrace fixed_point_trial(const Instance& instance, int rounds,
                                  std::optional<int> x = std::nullopt,
                                  const AvoidSet& avoid = {},
                                  std::uint64_t budget = kDefaultNodeBudget);

/// Smallest variable that occurs in some constraint, if any.
std::optional<int> first_constrained_variable(const Instance& instance);

}  // namespace rb
