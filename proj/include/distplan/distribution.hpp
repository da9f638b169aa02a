#pragma once

#include <compare>
#include <vector>

#include "distplan/index_set.hpp"

namespace distplan {

/// Processor rank within a distribution.
struct ProcId {
  int rank = 0;

  friend auto operator<=>(const ProcId&, const ProcId&) = default;
};

/**
 * Total map from processors {0..P-1} to the index sets they own.
 *
 * This is the processor-to-data view: an index may belong to several
 * processors (halo copies, replicated results, redundant work) or to none.
 * `global_size()` is the size N of the index space [0, N) the distributed
 * object lives in; every owned index is below it.
 */
class Distribution {
 public:
  /// Balanced contiguous blocks: p owns [floor(pN/P), floor((p+1)N/P)).
  static Distribution block(Index n, int nprocs);
  /// p owns { i < N : i mod P = p }.
  static Distribution cyclic(Index n, int nprocs);
  /// Every processor owns [0, N).
  static Distribution replicated(Index n, int nprocs);
  /// Sets taken verbatim; P = sets.size(). Throws DomainError if a set
  /// reaches past `n` or if `sets` is empty.
  static Distribution explicit_sets(Index n, std::vector<IndexSet> sets);

  int nprocs() const noexcept { return static_cast<int>(per_proc_.size()); }
  Index global_size() const noexcept { return n_; }

  const IndexSet& lookup(ProcId p) const;
  const IndexSet& operator[](ProcId p) const { return lookup(p); }
  const std::vector<IndexSet>& sets() const noexcept { return per_proc_; }

  /// All p with i in d(p), ascending.
  std::vector<ProcId> owners(Index i) const;

  IndexSet global_span() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Distribution(Index n, std::vector<IndexSet> sets) : n_(n), per_proc_(std::move(sets)) {}

  Index n_ = 0;
  std::vector<IndexSet> per_proc_;
};

}  // namespace distplan
