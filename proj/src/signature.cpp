#include "distplan/signature.hpp"

#include <algorithm>
#include <string>

namespace distplan {

namespace {

std::vector<Index> sorted_unique(std::vector<Index> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_bound(Index n_in) {
  if (n_in < 0) throw DomainError("input size must be non-negative, got " + std::to_string(n_in));
}

// [lo, hi) clipped to [0, n)
Interval clip(Index lo, Index hi, Index n) { return {std::max<Index>(lo, 0), std::min(hi, n)}; }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

SignatureFunction SignatureFunction::stencil(std::vector<Index> offsets, Index n_in) {
  check_bound(n_in);
  offsets = sorted_unique(std::move(offsets));
  if (offsets.empty()) throw DomainError("stencil needs at least one offset");
  return {StencilSignature{std::move(offsets)}, n_in};
}

SignatureFunction SignatureFunction::affine(Index stride, std::vector<Index> offsets, Index n_in) {
  check_bound(n_in);
  if (stride < 1) throw DomainError("affine stride must be positive, got " + std::to_string(stride));
  offsets = sorted_unique(std::move(offsets));
  if (offsets.empty()) throw DomainError("affine signature needs at least one offset");
  if (offsets.front() < 0) throw DomainError("affine offsets must be non-negative");
  return {AffineSignature{stride, std::move(offsets)}, n_in};
}

SignatureFunction SignatureFunction::sparse(std::map<Index, IndexSet> rows, Index n_in) {
  check_bound(n_in);
  for (const auto& [i, row] : rows) {
    if (i < 0) throw DomainError("negative sparse row index " + std::to_string(i));
    if (!row.empty() && row.intervals().back().hi > n_in) {
      throw DomainError("sparse row " + std::to_string(i) + " references columns beyond " +
                        std::to_string(n_in));
    }
  }
  return {SparseSignature{std::move(rows)}, n_in};
}

SignatureFunction SignatureFunction::total(Index n_in) {
  check_bound(n_in);
  return {TotalSignature{}, n_in};
}

SignatureFunction SignatureFunction::from_dense(const std::vector<std::vector<int>>& matrix,
                                                Index n_in) {
  std::map<Index, IndexSet> rows;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (static_cast<Index>(matrix[i].size()) != n_in) {
      throw DomainError("dense row " + std::to_string(i) + " has " +
                        std::to_string(matrix[i].size()) + " columns, expected " +
                        std::to_string(n_in));
    }
    std::vector<Index> cols;
    for (std::size_t j = 0; j < matrix[i].size(); ++j) {
      if (matrix[i][j] != 0) cols.push_back(static_cast<Index>(j));
    }
    rows.emplace(static_cast<Index>(i), IndexSet::from_elements(cols));
  }
  return sparse(std::move(rows), n_in);
}

const char* SignatureFunction::kind() const noexcept {
  return std::visit(Overloaded{[](const StencilSignature&) { return "stencil"; },
                               [](const AffineSignature&) { return "affine"; },
                               [](const SparseSignature&) { return "sparse"; },
                               [](const TotalSignature&) { return "total"; }},
                    rule_);
}

IndexSet SignatureFunction::apply_index(Index i) const {
  if (i < 0) throw DomainError("negative output index " + std::to_string(i));
  return apply_set(IndexSet::range(i, i + 1));
}

IndexSet SignatureFunction::apply_set(const IndexSet& s) const {
  if (s.empty()) return {};
  const Index n = n_in_;
  return std::visit(
      Overloaded{
          [&](const StencilSignature& st) {
            // Each interval shifted by each offset stays an interval.
            std::vector<Interval> pieces;
            pieces.reserve(s.intervals().size() * st.offsets.size());
            for (const auto& iv : s.intervals()) {
              for (Index d : st.offsets) {
                pieces.push_back(clip(checked_add(iv.lo, d), checked_add(iv.hi, d), n));
              }
            }
            return IndexSet::from_intervals(std::move(pieces));
          },
          [&](const AffineSignature& af) {
            std::vector<Interval> pieces;
            for (const auto& iv : s.intervals()) {
              if (af.stride == 1) {
                for (Index b : af.offsets) {
                  pieces.push_back(clip(checked_add(iv.lo, b), checked_add(iv.hi, b), n));
                }
                continue;
              }
              for (Index i = iv.lo; i < iv.hi; ++i) {
                Index base = checked_mul(af.stride, i);
                if (base >= n) break;
                for (Index b : af.offsets) {
                  Index j = checked_add(base, b);
                  if (j < n) pieces.push_back({j, j + 1});
                }
              }
            }
            return IndexSet::from_intervals(std::move(pieces));
          },
          [&](const SparseSignature& sp) {
            std::vector<Interval> pieces;
            for (const auto& iv : s.intervals()) {
              for (Index i = iv.lo; i < iv.hi; ++i) {
                auto it = sp.rows.find(i);
                if (it == sp.rows.end()) throw MissingRowError(i);
                pieces.insert(pieces.end(), it->second.intervals().begin(),
                              it->second.intervals().end());
              }
            }
            return IndexSet::from_intervals(std::move(pieces));
          },
          [&](const TotalSignature&) { return IndexSet::range(0, n); },
      },
      rule_);
}

Distribution SignatureFunction::apply_distribution(const Distribution& u) const {
  std::vector<IndexSet> sets;
  sets.reserve(u.nprocs());
  for (const auto& s : u.sets()) sets.push_back(apply_set(s));
  return Distribution::explicit_sets(n_in_, std::move(sets));
}

}  // namespace distplan
