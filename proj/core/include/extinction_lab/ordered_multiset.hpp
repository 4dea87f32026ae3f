#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace extinction_lab {

/// A living species: its fitness plus an insertion sequence number that
/// breaks floating-point ties (earlier insertions order first).
struct FitnessKey {
  double fitness = 0.0;
  std::uint64_t seq = 0;

  friend auto operator<=>(const FitnessKey&, const FitnessKey&) = default;
};

/// Ordered multiset of fitness values backed by a treap with subtree sizes:
/// insert, delete-min and rank/range counts are O(log n) expected.
///
/// Priorities come from a per-instance counter, so two sets fed the same
/// operations have identical shapes.
class OrderedMultiset {
 public:
  OrderedMultiset() = default;

  /// Inserts a value and returns its key.
  FitnessKey insert(double fitness);
  /// Smallest key; the set must not be empty.
  FitnessKey min() const;
  /// Removes and returns the smallest key; the set must not be empty.
  FitnessKey pop_min();

  std::size_t size() const { return root_ == kNil ? 0 : nodes_[root_].size; }
  bool empty() const { return root_ == kNil; }
  void clear();

  /// Number of elements with fitness < x.
  std::size_t count_less(double x) const;
  /// Number of elements with fitness <= x.
  std::size_t count_at_most(double x) const;
  /// Number of elements whose key orders at or before `key`.
  std::size_t count_not_after(const FitnessKey& key) const;
  /// Number of elements with a < fitness < b.
  std::size_t count_in(double a, double b) const;

  /// Keys in ascending order.
  std::vector<FitnessKey> keys() const;

 private:
  static constexpr std::uint32_t kNil = 0xffffffffu;

  struct Node {
    FitnessKey key;
    std::uint64_t priority;
    std::uint32_t left;
    std::uint32_t right;
    std::uint32_t size;
  };

  std::uint32_t allocate(const FitnessKey& key);
  std::uint32_t size_of(std::uint32_t n) const { return n == kNil ? 0 : nodes_[n].size; }
  void pull(std::uint32_t n);
  // Splits `t` into keys < key and keys >= key.
  void split(std::uint32_t t, const FitnessKey& key, std::uint32_t& lo, std::uint32_t& hi);
  std::uint32_t merge(std::uint32_t lo, std::uint32_t hi);
  std::uint64_t next_priority();

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> free_;
  std::uint32_t root_ = kNil;
  std::uint64_t next_seq_ = 0;
  std::uint64_t priority_state_ = 0x243f6a8885a308d3ULL;
};

}  // namespace extinction_lab
