#include "extinction_lab/ordered_multiset.hpp"

#include <cassert>
#include <stdexcept>

namespace extinction_lab {

std::uint64_t OrderedMultiset::next_priority() {
  std::uint64_t z = (priority_state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint32_t OrderedMultiset::allocate(const FitnessKey& key) {
  Node node{key, next_priority(), kNil, kNil, 1};
  if (!free_.empty()) {
    const std::uint32_t id = free_.back();
    free_.pop_back();
    nodes_[id] = node;
    return id;
  }
  nodes_.push_back(node);
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

void OrderedMultiset::pull(std::uint32_t n) {
  nodes_[n].size = 1 + size_of(nodes_[n].left) + size_of(nodes_[n].right);
}

void OrderedMultiset::split(std::uint32_t t, const FitnessKey& key, std::uint32_t& lo,
                            std::uint32_t& hi) {
  if (t == kNil) {
    lo = hi = kNil;
    return;
  }
  if (nodes_[t].key < key) {
    split(nodes_[t].right, key, nodes_[t].right, hi);
    lo = t;
  } else {
    split(nodes_[t].left, key, lo, nodes_[t].left);
    hi = t;
  }
  pull(t);
}

std::uint32_t OrderedMultiset::merge(std::uint32_t lo, std::uint32_t hi) {
  if (lo == kNil) return hi;
  if (hi == kNil) return lo;
  if (nodes_[lo].priority > nodes_[hi].priority) {
    nodes_[lo].right = merge(nodes_[lo].right, hi);
    pull(lo);
    return lo;
  }
  nodes_[hi].left = merge(lo, nodes_[hi].left);
  pull(hi);
  return hi;
}

FitnessKey OrderedMultiset::insert(double fitness) {
  const FitnessKey key{fitness, next_seq_++};
  const std::uint32_t node = allocate(key);
  std::uint32_t lo = kNil, hi = kNil;
  split(root_, key, lo, hi);
  root_ = merge(merge(lo, node), hi);
  return key;
}

FitnessKey OrderedMultiset::min() const {
  if (root_ == kNil) throw std::out_of_range("min of an empty multiset");
  std::uint32_t n = root_;
  while (nodes_[n].left != kNil) n = nodes_[n].left;
  return nodes_[n].key;
}

FitnessKey OrderedMultiset::pop_min() {
  if (root_ == kNil) throw std::out_of_range("pop_min of an empty multiset");
  std::uint32_t parent = kNil;
  std::uint32_t n = root_;
  while (nodes_[n].left != kNil) {
    --nodes_[n].size;
    parent = n;
    n = nodes_[n].left;
  }
  // The right child outranks nothing above n, so splicing it in keeps the
  // heap order.
  if (parent == kNil) {
    root_ = nodes_[n].right;
  } else {
    nodes_[parent].left = nodes_[n].right;
  }
  free_.push_back(n);
  return nodes_[n].key;
}

void OrderedMultiset::clear() {
  nodes_.clear();
  free_.clear();
  root_ = kNil;
}

std::size_t OrderedMultiset::count_less(double x) const {
  std::size_t count = 0;
  std::uint32_t n = root_;
  while (n != kNil) {
    if (nodes_[n].key.fitness < x) {
      count += size_of(nodes_[n].left) + 1;
      n = nodes_[n].right;
    } else {
      n = nodes_[n].left;
    }
  }
  return count;
}

std::size_t OrderedMultiset::count_at_most(double x) const {
  std::size_t count = 0;
  std::uint32_t n = root_;
  while (n != kNil) {
    if (nodes_[n].key.fitness <= x) {
      count += size_of(nodes_[n].left) + 1;
      n = nodes_[n].right;
    } else {
      n = nodes_[n].left;
    }
  }
  return count;
}

std::size_t OrderedMultiset::count_not_after(const FitnessKey& key) const {
  std::size_t count = 0;
  std::uint32_t n = root_;
  while (n != kNil) {
    if (nodes_[n].key <= key) {
      count += size_of(nodes_[n].left) + 1;
      n = nodes_[n].right;
    } else {
      n = nodes_[n].left;
    }
  }
  return count;
}

std::size_t OrderedMultiset::count_in(double a, double b) const {
  if (!(a < b)) return 0;
  return count_less(b) - count_at_most(a);
}

std::vector<FitnessKey> OrderedMultiset::keys() const {
  std::vector<FitnessKey> out;
  out.reserve(size());
  std::vector<std::uint32_t> stack;
  std::uint32_t n = root_;
  while (n != kNil || !stack.empty()) {
    while (n != kNil) {
      stack.push_back(n);
      n = nodes_[n].left;
    }
    n = stack.back();
    stack.pop_back();
    out.push_back(nodes_[n].key);
    n = nodes_[n].right;
  }
  return out;
}

}  // namespace extinction_lab
