#include "rb/relation.hpp"

#include <string>

#include "rb/error.hpp"

namespace rb {
namespace {

std::size_t ipow(int base, int exp) {
  std::size_t result = 1;
  for (int i = 0; i < exp; ++i) result *= static_cast<std::size_t>(base);
  return result;
}

// Advances `tuple` to the next lexicographic tuple over [0,d); false on wrap.
bool next_tuple(Tuple& tuple, int d) {
  for (int j = static_cast<int>(tuple.size()) - 1; j >= 0; --j) {
    if (++tuple[j] < d) return true;
    tuple[j] = 0;
  }
  return false;
}

}  // namespace

bool is_bijection(std::span<const int> perm, int d) {
  if (static_cast<int>(perm.size()) != d) return false;
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (int v : perm) {
    if (v < 0 || v >= d || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation inverse(std::span<const int> perm) {
  Permutation inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

Relation::Relation(int arity, int d) : arity_(arity), d_(d), table_(ipow(d, arity), 0) {
  if (arity < 0 || d < 1) throw Error(ErrorCode::kInvalidArgument, "bad relation shape");
}

Relation Relation::from_tuples(int arity, int d, const std::vector<Tuple>& tuples) {
  Relation rel(arity, d);
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != arity) {
      throw Error(ErrorCode::kInvalidArgument, "tuple arity mismatch");
    }
    for (int v : t) {
      if (v < 0 || v >= d) throw Error(ErrorCode::kInvalidArgument, "tuple value out of range");
    }
    rel.set(t, true);
  }
  return rel;
}

Relation Relation::circulant(int d, int k, int b) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "circulant relation needs k >= 2");
  if (b < 1 || b > d - 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "row degree b=" + std::to_string(b) + " outside [1, d-1]");
  }
  Relation rel(k, d);
  Tuple t(static_cast<std::size_t>(k), 0);
  std::size_t index = 0;
  do {
    int sum = -t[0];
    for (int j = 1; j < k; ++j) sum += t[j];
    const int residue = ((sum % d) + d) % d;
    if (residue < b) {
      rel.table_[index] = 1;
      ++rel.count_;
    }
    ++index;
  } while (next_tuple(t, d));
  return rel;
}

void Relation::set(std::span<const int> tuple, bool allowed) {
  auto& cell = table_[index_of(tuple)];
  if (cell != 0 && !allowed) --count_;
  if (cell == 0 && allowed) ++count_;
  cell = allowed ? 1 : 0;
}

std::size_t Relation::index_of(std::span<const int> tuple) const {
  std::size_t index = 0;
  for (int v : tuple) index = index * static_cast<std::size_t>(d_) + static_cast<std::size_t>(v);
  return index;
}

Tuple Relation::tuple_at(std::size_t index) const {
  Tuple t(static_cast<std::size_t>(arity_));
  for (int j = arity_ - 1; j >= 0; --j) {
    t[j] = static_cast<int>(index % static_cast<std::size_t>(d_));
    index /= static_cast<std::size_t>(d_);
  }
  return t;
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] != 0) out.push_back(tuple_at(i));
  }
  return out;
}

std::size_t Relation::degree(int coord, int value) const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] != 0 && tuple_at(i)[coord] == value) ++count;
  }
  return count;
}

bool Relation::is_regular(std::size_t per_value) const {
  std::vector<std::size_t> degrees(static_cast<std::size_t>(arity_ * d_), 0);
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] == 0) continue;
    const Tuple t = tuple_at(i);
    for (int j = 0; j < arity_; ++j) ++degrees[j * d_ + t[j]];
  }
  for (std::size_t deg : degrees) {
    if (deg != per_value) return false;
  }
  return true;
}

Relation Relation::complement() const {
  Relation out = *this;
  for (auto& cell : out.table_) cell = cell != 0 ? 0 : 1;
  out.count_ = table_.size() - count_;
  return out;
}

Relation Relation::apply_permutation(int coord, std::span<const int> perm) const {
  if (coord < 0 || coord >= arity_) {
    throw Error(ErrorCode::kInvalidArgument, "coordinate out of range");
  }
  if (!is_bijection(perm, d_)) {
    throw Error(ErrorCode::kNotBijective, "permutation is not a bijection on [0,d)");
  }
  Relation out(arity_, d_);
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] == 0) continue;
    Tuple t = tuple_at(i);
    t[coord] = perm[t[coord]];
    out.table_[out.index_of(t)] = 1;
  }
  out.count_ = count_;
  return out;
}

Relation Relation::project(int coord, int value) const {
  Relation out(arity_ - 1, d_);
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] == 0) continue;
    Tuple t = tuple_at(i);
    if (t[coord] != value) continue;
    t.erase(t.begin() + coord);
    out.set(t, true);
  }
  return out;
}

std::size_t regular_degree(int d, int k, int b) {
  return static_cast<std::size_t>(b) * ipow(d, k - 2);
}

}  // namespace rb
