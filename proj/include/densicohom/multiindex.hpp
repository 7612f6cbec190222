#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "densicohom/errors.hpp"
#include "densicohom/rational.hpp"

namespace densicohom {

/// A tuple of derivative orders (a_1,...,a_n), one per tensor slot.
/// Immutable value type; slots are 0-based in code.
class MultiIndex {
public:
  MultiIndex() = default;

  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw invalid_parameter("multi-index: need at least one slot");
    for (int e : entries_)
      if (e < 0) throw invalid_parameter("multi-index: negative entry");
  }

  MultiIndex(std::initializer_list<int> entries)
      : MultiIndex(std::vector<int>(entries)) {}

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t slot) const { return entries_[slot]; }
  const std::vector<int>& entries() const { return entries_; }

  long degree() const {
    return std::accumulate(entries_.begin(), entries_.end(), 0L);
  }

  /// Slot raised by one.
  MultiIndex raised(std::size_t slot) const {
    check_slot(slot);
    MultiIndex r(*this);
    ++r.entries_[slot];
    return r;
  }

  /// Slot lowered by one; throws not_lowerable on a zero slot.
  MultiIndex lowered(std::size_t slot) const {
    check_slot(slot);
    if (entries_[slot] == 0)
      throw not_lowerable("multi-index: slot " + std::to_string(slot) + " is zero");
    MultiIndex r(*this);
    --r.entries_[slot];
    return r;
  }

  MultiIndex with_slot(std::size_t slot, int value) const {
    check_slot(slot);
    if (value < 0) throw invalid_parameter("multi-index: negative entry");
    MultiIndex r(*this);
    r.entries_[slot] = value;
    return r;
  }

  // Lexicographic, leftmost slot most significant.
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(entries_[i]);
    }
    s += ')';
    return s;
  }

private:
  void check_slot(std::size_t slot) const {
    if (slot >= entries_.size())
      throw invalid_parameter("multi-index: slot out of range");
  }

  std::vector<int> entries_;
};

/// Descending lexicographic order; the row/column order of every matrix here.
struct LexDescending {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const { return a > b; }
};

/// N_k = C(n+k-1, k), the number of multi-indices of degree k in n slots.
/// k < 0 counts the empty set: 0.
inline Integer multiindex_count(std::size_t n, long k) {
  if (n == 0) throw invalid_parameter("multiindex_count: n must be positive");
  if (k < 0) return Integer(0);
  return binomial(static_cast<unsigned long>(n) + static_cast<unsigned long>(k) - 1,
                  static_cast<unsigned long>(k));
}

namespace detail {
inline void enumerate_rec(std::size_t slots_left, long k, std::vector<int>& prefix,
                          std::vector<MultiIndex>& out) {
  if (slots_left == 1) {
    prefix.push_back(static_cast<int>(k));
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (long v = k; v >= 0; --v) {
    prefix.push_back(static_cast<int>(v));
    enumerate_rec(slots_left - 1, k - v, prefix, out);
    prefix.pop_back();
  }
}
} // namespace detail

/// All multi-indices of degree k in n slots, in strictly descending
/// lexicographic order. k < 0 yields the empty list.
inline std::vector<MultiIndex> enumerate_multiindices(std::size_t n, long k) {
  if (n == 0) throw invalid_parameter("enumerate_multiindices: n must be positive");
  std::vector<MultiIndex> out;
  if (k < 0) return out;
  std::vector<int> prefix;
  prefix.reserve(n);
  detail::enumerate_rec(n, k, prefix, out);
  return out;
}

} // namespace densicohom
