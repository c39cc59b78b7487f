#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rb/instance.hpp"

namespace rb {

using Clause = std::vector<int>;

struct ClauseOrigin {
  enum class Kind { kForbiddenTuple, kDomainExclusion };
  Kind kind = Kind::kForbiddenTuple;
  /// Constraint index for forbidden tuples, CSP variable for exclusions.
  std::size_t index = 0;
  /// The forbidden tuple, or the single excluded bit pattern.
  Tuple values;

  friend bool operator==(const ClauseOrigin&, const ClauseOrigin&) = default;
};

struct Cnf {
  int num_vars = 0;
  std::vector<Clause> clauses;
  /// Parallel to `clauses` when produced by the encoder; empty after parsing.
  std::vector<ClauseOrigin> origins;
  /// Free-form "c" lines, without the leading "c ".
  std::vector<std::string> comments;
};

/// ceil(log2 d).
int bits_per_var(int d);

/// Bit j (little-endian) of CSP variable i is CNF variable 1 + i·B + j.
int cnf_variable(int csp_var, int bit, int bits);

/// One clause per forbidden tuple of each materialized relation, then one
/// clause per variable per unused bit pattern in [d, 2^B).
Cnf encode_log(const Instance& instance);

/// Clause total predicted by the census m(d^k - |R|) + n(2^B - d).
std::size_t expected_clause_count(const RbParams& params);

/// `model[v-1]` is the truth value of CNF variable v.
Assignment decode_assignment(const std::vector<bool>& model, const RbParams& params);

void write_dimacs(const Cnf& cnf, std::ostream& out);
std::string to_dimacs(const Cnf& cnf);
void write_dimacs(const Cnf& cnf, const std::string& path);

Cnf parse_dimacs(std::istream& in);
Cnf parse_dimacs_string(const std::string& text);
Cnf parse_dimacs(const std::string& path);

}  // namespace rb
