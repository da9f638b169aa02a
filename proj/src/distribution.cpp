#include "distplan/distribution.hpp"

#include <string>

namespace distplan {

namespace {

void check_args(Index n, int nprocs) {
  if (nprocs < 1) throw DomainError("processor count must be positive, got " + std::to_string(nprocs));
  if (n < 0) throw DomainError("global size must be non-negative, got " + std::to_string(n));
}

}  // namespace

Distribution Distribution::block(Index n, int nprocs) {
  check_args(n, nprocs);
  std::vector<IndexSet> sets;
  sets.reserve(nprocs);
  for (Index p = 0; p < nprocs; ++p) {
    Index lo = checked_mul(p, n) / nprocs;
    Index hi = checked_mul(p + 1, n) / nprocs;
    sets.push_back(IndexSet::range(lo, hi));
  }
  return Distribution(n, std::move(sets));
}

Distribution Distribution::cyclic(Index n, int nprocs) {
  check_args(n, nprocs);
  std::vector<std::vector<Interval>> parts(nprocs);
  for (Index i = 0; i < n; ++i) parts[i % nprocs].push_back({i, i + 1});
  std::vector<IndexSet> sets;
  sets.reserve(nprocs);
  for (auto& part : parts) sets.push_back(IndexSet::from_intervals(std::move(part)));
  return Distribution(n, std::move(sets));
}

Distribution Distribution::replicated(Index n, int nprocs) {
  check_args(n, nprocs);
  return Distribution(n, std::vector<IndexSet>(nprocs, IndexSet::range(0, n)));
}

Distribution Distribution::explicit_sets(Index n, std::vector<IndexSet> sets) {
  check_args(n, sets.empty() ? 0 : static_cast<int>(sets.size()));
  for (std::size_t p = 0; p < sets.size(); ++p) {
    if (!sets[p].empty() && sets[p].intervals().back().hi > n) {
      throw DomainError("processor " + std::to_string(p) + " owns indices beyond global size " +
                        std::to_string(n));
    }
  }
  return Distribution(n, std::move(sets));
}

const IndexSet& Distribution::lookup(ProcId p) const {
  if (p.rank < 0 || p.rank >= nprocs()) {
    throw DomainError("processor rank " + std::to_string(p.rank) + " out of range [0," +
                      std::to_string(nprocs()) + ")");
  }
  return per_proc_[p.rank];
}

std::vector<ProcId> Distribution::owners(Index i) const {
  std::vector<ProcId> out;
  for (int p = 0; p < nprocs(); ++p) {
    if (per_proc_[p].contains(i)) out.push_back(ProcId{p});
  }
  return out;
}

IndexSet Distribution::global_span() const { return unite_all(per_proc_); }

}  // namespace distplan
