#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rb/instance.hpp"
#include "rb/relation.hpp"

namespace rb {

/// A constraint with an explicit table. Arity may be anything from 0 up.
struct TableConstraint {
  std::vector<int> scope;
  Relation relation;

  friend bool operator==(const TableConstraint&, const TableConstraint&) = default;
};

/// Table-based CSP. Instances convert to it by materialization; restricting a
/// variable yields one with n-1 variables and lower-arity projections.
struct Csp {
  int n = 0;
  int d = 0;
  std::vector<TableConstraint> constraints;

  bool satisfies(std::size_t constraint_index, const Assignment& assignment) const;
  bool is_solution(const Assignment& assignment) const;

  friend bool operator==(const Csp&, const Csp&) = default;
};

Csp to_csp(const Instance& instance);

/// Canonical JSON text of a Csp; equal strings iff equal subproblems.
std::string canonical_form(const Csp& csp);

enum class SolveMode { kDecide, kCount, kEnumerate };
enum class SolveStatus { kSat, kUnsat, kBudgetExhausted };

const char* to_string(SolveMode mode);
const char* to_string(SolveStatus status);

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

struct SolveOptions {
  SolveMode mode = SolveMode::kCount;
  /// Solutions retained. In enumerate mode the search stops once `cap` are found.
  std::size_t cap = 16;
  std::uint64_t budget = kDefaultNodeBudget;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kUnsat;
  std::optional<std::uint64_t> count;  ///< set in count mode unless the budget ran out
  std::vector<Assignment> solutions;   ///< lexicographic order
  std::uint64_t nodes = 0;
  SolveMode mode = SolveMode::kCount;
  std::size_t cap = 0;
};

/// Chronological backtracking: variables in index order, values ascending,
/// each constraint checked as soon as its last scope variable is assigned.
SolveReport solve(const Csp& csp, const SolveOptions& options = {});
SolveReport solve(const Instance& instance, const SolveOptions& options = {});

inline constexpr std::uint64_t kBruteForceGuard = 10'000'000;

/// Exhaustive enumeration of all d^n assignments. Refuses above 10^7.
std::uint64_t brute_force_count(const Instance& instance);
std::uint64_t brute_force_count(const Csp& csp);

/// Subproblem with `var` fixed to `value` and removed. Remaining variables
/// keep their relative order.
Csp restrict(const Csp& csp, int var, int value);
Csp restrict(const Instance& instance, int var, int value);

struct NearSolutionReport {
  std::size_t constraint_index = 0;
  SolveStatus status = SolveStatus::kUnsat;
  /// Assignments violating only this constraint (count mode only).
  std::optional<std::uint64_t> count;
  std::optional<Assignment> witness;
  std::uint64_t nodes = 0;
};

/// Solves the instance with the indexed constraint complemented.
NearSolutionReport near_solutions(const Instance& instance, std::size_t constraint_index,
                                  const SolveOptions& options = {});

struct SelfUnsatReport {
  std::vector<bool> per_constraint;
  std::vector<bool> per_variable;
  bool unsat = false;
  bool is_self_unsat_formula = false;
};

/// Throws rb::Error(kBudgetExhausted) if any underlying solve runs out.
SelfUnsatReport self_unsat_analysis(const Instance& instance,
                                    std::uint64_t budget = kDefaultNodeBudget);

struct DegreeReport {
  std::vector<int> degrees;
  int min = 0;
  double mean = 0.0;
  /// r·k·ln d / 100
  double threshold = 0.0;
  int below_threshold_count = 0;
};

DegreeReport degree_stats(const Instance& instance);

}  // namespace rb
