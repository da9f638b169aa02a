#include "distplan/index_set.hpp"

#include <algorithm>
#include <sstream>

namespace distplan {

Index checked_add(Index a, Index b) {
  Index r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw DomainError("index arithmetic overflow in " + std::to_string(a) + " + " +
                      std::to_string(b));
  }
  return r;
}

Index checked_mul(Index a, Index b) {
  Index r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw DomainError("index arithmetic overflow in " + std::to_string(a) + " * " +
                      std::to_string(b));
  }
  return r;
}

IndexSet::IndexSet(std::vector<Interval> canonical) : intervals_(std::move(canonical)) {
  prefix_.reserve(intervals_.size());
  for (const auto& iv : intervals_) {
    prefix_.push_back(size_);
    size_ += static_cast<std::size_t>(iv.size());
  }
}

IndexSet IndexSet::from_elements(std::span<const Index> elems) {
  std::vector<Index> sorted(elems.begin(), elems.end());
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.front() < 0) {
    throw DomainError("negative index " + std::to_string(sorted.front()));
  }
  std::vector<Interval> out;
  for (Index e : sorted) {
    if (!out.empty() && e <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, checked_add(e, 1));
    } else {
      out.push_back({e, checked_add(e, 1)});
    }
  }
  return IndexSet(std::move(out));
}

IndexSet IndexSet::from_intervals(std::vector<Interval> intervals) {
  std::erase_if(intervals, [](const Interval& iv) { return iv.empty(); });
  for (const auto& iv : intervals) {
    if (iv.lo < 0) throw DomainError("negative index " + std::to_string(iv.lo));
  }
  std::sort(intervals.begin(), intervals.end());
  std::vector<Interval> out;
  out.reserve(intervals.size());
  for (const auto& iv : intervals) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return IndexSet(std::move(out));
}

IndexSet IndexSet::range(Index lo, Index hi) {
  if (hi <= lo) return {};
  if (lo < 0) throw DomainError("negative index " + std::to_string(lo));
  return IndexSet({{lo, hi}});
}

bool IndexSet::contains(Index i) const noexcept { return position(i).has_value(); }

std::optional<std::size_t> IndexSet::position(Index i) const noexcept {
  // first interval whose hi > i
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), i,
                             [](Index v, const Interval& iv) { return v < iv.hi; });
  if (it == intervals_.end() || i < it->lo) return std::nullopt;
  auto k = static_cast<std::size_t>(it - intervals_.begin());
  return prefix_[k] + static_cast<std::size_t>(i - it->lo);
}

std::vector<Index> IndexSet::elements() const {
  std::vector<Index> out;
  out.reserve(size_);
  for (const auto& iv : intervals_) {
    for (Index i = iv.lo; i < iv.hi; ++i) out.push_back(i);
  }
  return out;
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < intervals_.size(); ++k) {
    if (k) os << ',';
    os << '[' << intervals_[k].lo << ',' << intervals_[k].hi << ')';
  }
  os << '}';
  return os.str();
}

bool IndexSet::is_canonical(std::span<const Interval> intervals) noexcept {
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    if (intervals[k].lo < 0 || intervals[k].empty()) return false;
    // strict gap: disjoint and non-adjacent
    if (k > 0 && intervals[k - 1].hi >= intervals[k].lo) return false;
  }
  return true;
}

IndexSet unite(const IndexSet& a, const IndexSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  const auto& x = a.intervals_;
  const auto& y = b.intervals_;
  std::vector<Interval> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    const Interval& next = (j == y.size() || (i < x.size() && x[i].lo <= y[j].lo)) ? x[i++] : y[j++];
    if (!out.empty() && next.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, next.hi);
    } else {
      out.push_back(next);
    }
  }
  return IndexSet(std::move(out));
}

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  const auto& x = a.intervals_;
  const auto& y = b.intervals_;
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    Index lo = std::max(x[i].lo, y[j].lo);
    Index hi = std::min(x[i].hi, y[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (x[i].hi < y[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  // Pieces of two canonical lists stay separated by gaps, so no coalescing.
  return IndexSet(std::move(out));
}

IndexSet difference(const IndexSet& a, const IndexSet& b) {
  const auto& y = b.intervals_;
  std::vector<Interval> out;
  std::size_t j = 0;
  for (Interval cur : a.intervals_) {
    while (j < y.size() && y[j].hi <= cur.lo) ++j;
    std::size_t k = j;
    while (k < y.size() && y[k].lo < cur.hi) {
      if (y[k].lo > cur.lo) out.push_back({cur.lo, y[k].lo});
      cur.lo = std::max(cur.lo, y[k].hi);
      if (cur.lo >= cur.hi) break;
      ++k;
    }
    if (cur.lo < cur.hi) out.push_back(cur);
  }
  return IndexSet(std::move(out));
}

bool is_superset(const IndexSet& a, const IndexSet& b) noexcept {
  const auto& x = a.intervals();
  std::size_t i = 0;
  for (const auto& iv : b.intervals()) {
    while (i < x.size() && x[i].hi < iv.hi) ++i;
    if (i == x.size() || x[i].lo > iv.lo) return false;
  }
  return true;
}

bool intersects(const IndexSet& a, const IndexSet& b) noexcept {
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (std::max(x[i].lo, y[j].lo) < std::min(x[i].hi, y[j].hi)) return true;
    if (x[i].hi < y[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

IndexSet unite_all(std::span<const IndexSet> sets) {
  std::vector<Interval> all;
  for (const auto& s : sets) all.insert(all.end(), s.intervals().begin(), s.intervals().end());
  return IndexSet::from_intervals(std::move(all));
}

}  // namespace distplan
