#include "rb/instance.hpp"

#include <numeric>
#include <string>

#include "rb/error.hpp"
#include "rb/rng.hpp"

namespace rb {

Permutation identity_permutation(int d) {
  Permutation perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  return perm;
}

Relation materialize(const Constraint& constraint, const Relation& base) {
  Relation rel = base;
  for (int j = 0; j < static_cast<int>(constraint.perms.size()); ++j) {
    const auto& perm = constraint.perms[j];
    bool identity = true;
    for (std::size_t v = 0; v < perm.size() && identity; ++v) {
      identity = perm[v] == static_cast<int>(v);
    }
    if (!identity) rel = rel.apply_permutation(j, perm);
  }
  return rel;
}

Relation Instance::materialize(std::size_t constraint_index) const {
  return rb::materialize(constraints.at(constraint_index), base);
}

bool Instance::satisfies(std::size_t constraint_index, const Assignment& assignment) const {
  const auto& c = constraints.at(constraint_index);
  // Pull the tuple back through the permutations instead of materializing.
  std::vector<int> pre(c.scope.size());
  for (std::size_t j = 0; j < c.scope.size(); ++j) {
    const int value = assignment.at(c.scope[j]);
    const auto& perm = c.perms[j];
    int source = -1;
    for (std::size_t w = 0; w < perm.size(); ++w) {
      if (perm[w] == value) {
        source = static_cast<int>(w);
        break;
      }
    }
    pre[j] = source;
  }
  return base.contains(pre);
}

bool Instance::is_solution(const Assignment& assignment) const {
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!satisfies(i, assignment)) return false;
  }
  return true;
}

std::vector<std::size_t> Instance::violated(const Assignment& assignment) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!satisfies(i, assignment)) out.push_back(i);
  }
  return out;
}

void validate(const Instance& instance) {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "invalid instance: " + what);
  };
  check_params(instance.params);
  const int n = instance.n();
  const int d = instance.d();
  const int k = instance.k();
  if (instance.base.arity() != k || instance.base.domain() != d) fail("base shape mismatch");
  if (static_cast<int>(instance.constraints.size()) != instance.params.m) {
    fail("constraint count differs from m");
  }
  for (const auto& c : instance.constraints) {
    if (static_cast<int>(c.scope.size()) != k) fail("scope arity differs from k");
    if (static_cast<int>(c.perms.size()) != k) fail("permutation count differs from k");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : c.scope) {
      if (v < 0 || v >= n) fail("scope variable out of range");
      if (seen[v]) fail("repeated variable in scope");
      seen[v] = true;
    }
    for (const auto& perm : c.perms) {
      if (!is_bijection(perm, d)) fail("permutation is not a bijection");
    }
  }
  if (instance.planted) {
    const auto& sigma = *instance.planted;
    if (static_cast<int>(sigma.size()) != n) fail("planted assignment length differs from n");
    for (int v : sigma) {
      if (v < 0 || v >= d) fail("planted value out of range");
    }
    if (!instance.is_solution(sigma)) fail("planted assignment violates a constraint");
  }
}

Relation gen_base_relation(int d, int k, int b) { return Relation::circulant(d, k, b); }

Instance gen_instance(const RbParams& params, const GenOptions& options) {
  check_params(params);
  const int n = params.n;
  const int d = params.d;
  const int k = params.k;
  if (n < k) throw Error(ErrorCode::kInvalidArgument, "need n >= k distinct variables");
  if (options.planted && k != 2) {
    throw Error(ErrorCode::kUnsupportedArity, "planted generation is defined for k = 2 only");
  }

  Instance inst;
  inst.params = params;
  inst.base_kind = BaseKind::kCirculant;
  inst.base = gen_base_relation(d, k, params.b);

  if (options.planted) {
    auto rng = rng_stream(params.seed, StreamPurpose::kPlanted, 0);
    Assignment sigma(static_cast<std::size_t>(n));
    for (auto& v : sigma) v = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(d)));
    inst.planted = std::move(sigma);
  }

  std::vector<int> pool(static_cast<std::size_t>(n));
  inst.constraints.reserve(static_cast<std::size_t>(params.m));
  for (int i = 0; i < params.m; ++i) {
    Constraint c;
    std::iota(pool.begin(), pool.end(), 0);
    auto scope_rng = rng_stream(params.seed, StreamPurpose::kScope, static_cast<std::uint64_t>(i));
    for (int j = 0; j < k; ++j) {
      const auto pick = j + static_cast<int>(scope_rng.bounded(static_cast<std::uint64_t>(n - j)));
      std::swap(pool[j], pool[pick]);
      c.scope.push_back(pool[j]);
    }

    auto perm_rng = rng_stream(params.seed, StreamPurpose::kPerm, static_cast<std::uint64_t>(i));
    c.perms.push_back(identity_permutation(d));
    for (int j = 1; j < k; ++j) c.perms.push_back(perm_rng.permutation(d));

    if (inst.planted) {
      const auto& sigma = *inst.planted;
      const int row = sigma[c.scope[0]];
      const int target = sigma[c.scope[1]];
      // Pick one of the row's allowed partners and shift it onto the target.
      std::vector<int> partners;
      for (int w = 0; w < d; ++w) {
        const int t[2] = {row, w};
        if (inst.base.contains(t)) partners.push_back(w);
      }
      const int partner = partners[perm_rng.bounded(partners.size())];
      const int shift = ((target - c.perms[1][partner]) % d + d) % d;
      for (auto& v : c.perms[1]) v = (v + shift) % d;
    }
    inst.constraints.push_back(std::move(c));
  }

  if (inst.planted && !inst.is_solution(*inst.planted)) {
    throw Error(ErrorCode::kInvalidArgument, "planted assignment failed verification");
  }
  return inst;
}

Instance make_instance(const RbParams& params, Relation base, std::vector<Constraint> constraints,
                       std::optional<Assignment> planted) {
  Instance inst;
  inst.params = params;
  inst.base_kind = BaseKind::kExplicit;
  inst.base = std::move(base);
  inst.constraints = std::move(constraints);
  inst.planted = std::move(planted);
  validate(inst);
  return inst;
}

}  // namespace rb
