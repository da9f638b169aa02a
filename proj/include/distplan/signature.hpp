#pragma once

#include <map>
#include <variant>
#include <vector>

#include "distplan/distribution.hpp"
#include "distplan/index_set.hpp"

namespace distplan {

/// sigma(i) = { i + d : d in offsets }
struct StencilSignature {
  std::vector<Index> offsets;  // sorted, unique, non-empty
};

/// sigma(i) = { stride * i + b : b in offsets }, e.g. multigrid restriction
/// with stride 2 and offsets {0, 1}.
struct AffineSignature {
  Index stride = 1;
  std::vector<Index> offsets;  // sorted, unique, non-negative, non-empty
};

/// sigma(i) = rows[i]; the row structure of a sparse matrix.
struct SparseSignature {
  std::map<Index, IndexSet> rows;
};

/// sigma(i) = [0, n_in); every output depends on every input.
struct TotalSignature {};

/**
 * Dependency rule of a data-parallel kernel: for each output index, the set
 * of input indices it is computed from.
 *
 * Images are clipped to the input space [0, n_in), so a stencil at the
 * domain edge loses its out-of-range neighbours.
 */
class SignatureFunction {
 public:
  using Rule = std::variant<StencilSignature, AffineSignature, SparseSignature, TotalSignature>;

  static SignatureFunction stencil(std::vector<Index> offsets, Index n_in);
  static SignatureFunction affine(Index stride, std::vector<Index> offsets, Index n_in);
  static SignatureFunction sparse(std::map<Index, IndexSet> rows, Index n_in);
  static SignatureFunction total(Index n_in);

  /// Sparse rule from a row-major 0/1 matrix; row i lists the columns j
  /// with matrix[i][j] != 0. Every row must have n_in entries.
  static SignatureFunction from_dense(const std::vector<std::vector<int>>& matrix, Index n_in);

  const Rule& rule() const noexcept { return rule_; }
  Index domain_bound() const noexcept { return n_in_; }

  /// Dependency set of output index i. Throws MissingRowError for a sparse
  /// rule without row i.
  IndexSet apply_index(Index i) const;

  /// Union of apply_index(i) over i in s.
  IndexSet apply_set(const IndexSet& s) const;

  /// p -> apply_set(u(p)); the result lives in the input space [0, n_in).
  Distribution apply_distribution(const Distribution& u) const;

  const char* kind() const noexcept;

 private:
  SignatureFunction(Rule rule, Index n_in) : rule_(std::move(rule)), n_in_(n_in) {}

  Rule rule_;
  Index n_in_ = 0;
};

}  // namespace distplan
