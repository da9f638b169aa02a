#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distplan/error.hpp"

namespace distplan {

/// Half-open range [lo, hi) of global indices.
struct Interval {
  Index lo = 0;
  Index hi = 0;

  Index size() const noexcept { return hi - lo; }
  bool empty() const noexcept { return hi <= lo; }

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/**
 * Finite set of non-negative global indices.
 *
 * Stored in canonical form: intervals sorted by `lo`, non-empty, pairwise
 * disjoint and non-adjacent. Two sets are equal iff their interval lists are
 * identical. Values are immutable once built.
 */
class IndexSet {
 public:
  IndexSet() = default;

  /// Set of the given elements; duplicates collapse. Throws DomainError on a
  /// negative element.
  static IndexSet from_elements(std::span<const Index> elems);
  static IndexSet from_elements(std::initializer_list<Index> elems) {
    return from_elements(std::span<const Index>(elems.begin(), elems.size()));
  }

  /// Set covered by arbitrary (unsorted, overlapping, possibly empty)
  /// intervals. Throws DomainError if any non-empty interval has lo < 0.
  static IndexSet from_intervals(std::vector<Interval> intervals);

  /// [lo, hi); empty when hi <= lo.
  static IndexSet range(Index lo, Index hi);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool empty() const noexcept { return intervals_.empty(); }
  std::size_t size() const noexcept { return size_; }

  bool contains(Index i) const noexcept;

  /// Ordinal of `i` among the elements in ascending order, or nullopt when
  /// `i` is not a member.
  std::optional<std::size_t> position(Index i) const noexcept;

  std::vector<Index> elements() const;

  /// Smallest element. Precondition: non-empty.
  Index front() const { return intervals_.front().lo; }

  /// "{[0,3),[5,6)}"; "{}" when empty.
  std::string to_string() const;

  /// Checks the canonical-form invariant on a raw interval list.
  static bool is_canonical(std::span<const Interval> intervals) noexcept;

  friend bool operator==(const IndexSet& a, const IndexSet& b) noexcept {
    return a.intervals_ == b.intervals_;
  }

 private:
  explicit IndexSet(std::vector<Interval> canonical);

  std::vector<Interval> intervals_;
  // prefix_[k] = number of elements in intervals_[0..k)
  std::vector<std::size_t> prefix_;
  std::size_t size_ = 0;

  friend IndexSet unite(const IndexSet&, const IndexSet&);
  friend IndexSet intersect(const IndexSet&, const IndexSet&);
  friend IndexSet difference(const IndexSet&, const IndexSet&);
};

IndexSet unite(const IndexSet& a, const IndexSet& b);
IndexSet intersect(const IndexSet& a, const IndexSet& b);
/// a \ b
IndexSet difference(const IndexSet& a, const IndexSet& b);
/// True iff every element of b is in a (so a ⊇ a).
bool is_superset(const IndexSet& a, const IndexSet& b) noexcept;
bool intersects(const IndexSet& a, const IndexSet& b) noexcept;

/// Union of many sets.
IndexSet unite_all(std::span<const IndexSet> sets);

/// Overflow-checked helpers for index arithmetic.
Index checked_add(Index a, Index b);
Index checked_mul(Index a, Index b);

}  // namespace distplan
