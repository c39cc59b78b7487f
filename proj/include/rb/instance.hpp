#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rb/params.hpp"
#include "rb/relation.hpp"

namespace rb {

inline constexpr int kFormatVersion = 1;

using Assignment = std::vector<int>;

/// A constraint over `scope`; its relation is the base relation with value
/// `perms[j]` substituted at coordinate j. Generated constraints keep
/// perms[0] as the identity; a symmetry mapping on coordinate 0 breaks that.
struct Constraint {
  std::vector<int> scope;
  std::vector<Permutation> perms;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

enum class BaseKind { kCirculant, kExplicit };

struct Instance {
  RbParams params;
  BaseKind base_kind = BaseKind::kCirculant;
  Relation base;
  std::vector<Constraint> constraints;
  std::optional<Assignment> planted;

  int n() const { return params.n; }
  int d() const { return params.d; }
  int k() const { return params.k; }

  Relation materialize(std::size_t constraint_index) const;
  bool satisfies(std::size_t constraint_index, const Assignment& assignment) const;
  bool is_solution(const Assignment& assignment) const;
  std::vector<std::size_t> violated(const Assignment& assignment) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

Relation materialize(const Constraint& constraint, const Relation& base);

/// Structural checks: scopes, permutations, base shape, planted soundness.
void validate(const Instance& instance);

Relation gen_base_relation(int d, int k, int b);

struct GenOptions {
  bool planted = false;
};

/// Draws m constraints from the seeded streams. With `planted`, a uniform
/// assignment is drawn first and each coordinate-1 permutation is followed by
/// a cyclic shift so the constraint admits the planted tuple (k = 2 only).
Instance gen_instance(const RbParams& params, const GenOptions& options = {});

/// Instance over an arbitrary regular base relation; constraints given.
Instance make_instance(const RbParams& params, Relation base,
                       std::vector<Constraint> constraints,
                       std::optional<Assignment> planted = std::nullopt);

Permutation identity_permutation(int d);

}  // namespace rb
