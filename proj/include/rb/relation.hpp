#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rb {

using Tuple = std::vector<int>;
using Permutation = std::vector<int>;

bool is_bijection(std::span<const int> perm, int d);
Permutation inverse(std::span<const int> perm);

/// A set of arity-k tuples over [0,d), stored as a dense membership table
/// indexed with coordinate 0 most significant, so iteration order is
/// lexicographic.
class Relation {
 public:
  Relation() = default;
  Relation(int arity, int d);

  static Relation from_tuples(int arity, int d, const std::vector<Tuple>& tuples);

  /// t allowed iff (t_1 + ... + t_{k-1} - t_0) mod d lies in [0, b).
  static Relation circulant(int d, int k, int b);

  int arity() const { return arity_; }
  int domain() const { return d_; }
  std::size_t size() const { return count_; }
  std::size_t cells() const { return table_.size(); }

  bool contains(std::span<const int> tuple) const { return table_[index_of(tuple)] != 0; }
  bool contains_index(std::size_t index) const { return table_[index] != 0; }
  void set(std::span<const int> tuple, bool allowed);

  std::size_t index_of(std::span<const int> tuple) const;
  Tuple tuple_at(std::size_t index) const;

  /// Allowed tuples in lexicographic order.
  std::vector<Tuple> tuples() const;

  /// Number of allowed tuples whose coordinate `coord` equals `value`.
  std::size_t degree(int coord, int value) const;

  /// Every value at every coordinate occurs in exactly `per_value` tuples.
  bool is_regular(std::size_t per_value) const;

  Relation complement() const;

  /// { t with t_coord replaced by perm(t_coord) }.
  Relation apply_permutation(int coord, std::span<const int> perm) const;

  /// Tuples with coordinate `coord` equal to `value`, that coordinate dropped.
  Relation project(int coord, int value) const;

  /// Raw membership table, one byte per cell.
  std::span<const std::uint8_t> table() const { return table_; }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  int arity_ = 0;
  int d_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> table_;
};

/// Expected per-value degree b·d^(k-2) for a regular arity-k relation.
std::size_t regular_degree(int d, int k, int b);

}  // namespace rb
