#pragma once

// Random generators for kernels and programs used by the property suites.

#include <random>
#include <string>
#include <vector>

#include "distplan/program.hpp"

namespace distplan::testing {

using Rng = std::mt19937_64;

inline Index uniform(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline IndexSet random_subset(Rng& rng, Index n, double density) {
  std::vector<Index> elems;
  for (Index i = 0; i < n; ++i) {
    if (coin(rng, density)) elems.push_back(i);
  }
  return IndexSet::from_elements(elems);
}

/// Random index set favouring runs, elements below `bound`.
inline IndexSet random_index_set(Rng& rng, Index bound) {
  std::vector<Interval> ivs;
  const Index count = uniform(rng, 0, 6);
  for (Index k = 0; k < count; ++k) {
    Index lo = uniform(rng, 0, bound - 1);
    ivs.push_back({lo, std::min(bound, lo + uniform(rng, 0, 12))});
  }
  if (coin(rng, 0.3)) {
    for (Index j = 0; j < uniform(rng, 0, 10); ++j) {
      Index e = uniform(rng, 0, bound - 1);
      ivs.push_back({e, e + 1});
    }
  }
  return IndexSet::from_intervals(std::move(ivs));
}

/// Explicit, possibly overlapping ownership. With `covering`, every index has
/// at least one owner.
inline Distribution random_explicit(Rng& rng, Index n, int procs, bool covering) {
  std::vector<std::vector<Index>> owned(procs);
  const double extra = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
  for (Index i = 0; i < n; ++i) {
    bool any = false;
    for (int p = 0; p < procs; ++p) {
      if (coin(rng, extra)) {
        owned[p].push_back(i);
        any = true;
      }
    }
    if (!any && (covering || coin(rng, 0.8))) {
      // contiguous-ish default owner with some scatter
      int p = coin(rng, 0.7) ? static_cast<int>(i * procs / std::max<Index>(n, 1))
                             : static_cast<int>(uniform(rng, 0, procs - 1));
      owned[p].push_back(i);
    }
  }
  std::vector<IndexSet> sets;
  for (auto& v : owned) sets.push_back(IndexSet::from_elements(v));
  return Distribution::explicit_sets(n, std::move(sets));
}

enum class DistKind { Block, Cyclic, Replicated, Explicit };

inline Distribution random_distribution(Rng& rng, Index n, int procs, bool covering, DistKind kind) {
  switch (kind) {
    case DistKind::Block: return Distribution::block(n, procs);
    case DistKind::Cyclic: return Distribution::cyclic(n, procs);
    case DistKind::Replicated: return Distribution::replicated(n, procs);
    default: return random_explicit(rng, n, procs, covering);
  }
}

inline Distribution random_distribution(Rng& rng, Index n, int procs, bool covering = true) {
  return random_distribution(rng, n, procs, covering, static_cast<DistKind>(uniform(rng, 0, 3)));
}

enum class SigKind { Stencil, Affine, Sparse, Total };

inline std::vector<Index> random_offsets(Rng& rng, Index lo, Index hi) {
  std::vector<Index> out;
  while (out.empty()) {
    for (Index d = lo; d <= hi; ++d) {
      if (coin(rng, 0.4)) out.push_back(d);
    }
  }
  return out;
}

/// Output size compatible with the signature kind for an input of size n_in.
inline Index random_output_size(Rng& rng, SigKind kind, Index n_in, Index stride, Index max_n) {
  if (kind == SigKind::Affine) return std::max<Index>(0, (n_in + stride - 1) / stride);
  if (kind == SigKind::Stencil && coin(rng, 0.7)) return n_in;
  return uniform(rng, 0, max_n);
}

struct RandomSignature {
  SignatureFunction sigma;
  Index n_out;
};

inline RandomSignature random_signature(Rng& rng, SigKind kind, Index n_in, Index max_n) {
  switch (kind) {
    case SigKind::Stencil: {
      Index n_out = random_output_size(rng, kind, n_in, 1, max_n);
      return {SignatureFunction::stencil(random_offsets(rng, -3, 3), n_in), n_out};
    }
    case SigKind::Affine: {
      Index stride = uniform(rng, 1, 3);
      return {SignatureFunction::affine(stride, random_offsets(rng, 0, 3), n_in),
              random_output_size(rng, kind, n_in, stride, max_n)};
    }
    case SigKind::Sparse: {
      Index n_out = random_output_size(rng, kind, n_in, 1, max_n);
      std::map<Index, IndexSet> rows;
      const double density = std::uniform_real_distribution<double>(0.0, 0.05)(rng);
      for (Index i = 0; i < n_out; ++i) {
        rows.emplace(i, n_in == 0 ? IndexSet{} : (coin(rng) ? random_subset(rng, n_in, density)
                                                            : random_index_set(rng, n_in)));
      }
      return {SignatureFunction::sparse(std::move(rows), n_in), n_out};
    }
    default:
      return {SignatureFunction::total(n_in), random_output_size(rng, kind, n_in, 1, max_n)};
  }
}

inline CombinerSpec random_combiner(Rng& rng, const SignatureFunction& sigma) {
  if (const auto* st = std::get_if<StencilSignature>(&sigma.rule()); st && coin(rng, 0.6)) {
    WeightedCombiner w;
    for (Index d : st->offsets) w.weights[d] = uniform(rng, -3, 3);
    return w;
  }
  return coin(rng) ? CombinerSpec{SumCombiner{}} : CombinerSpec{MaxCombiner{}};
}

/// Random single kernel; `covering` keeps alpha's span equal to [0, N).
inline Kernel random_kernel(Rng& rng, Index max_n, int max_p, bool covering = true) {
  const int procs = static_cast<int>(uniform(rng, 1, max_p));
  const Index n_in = uniform(rng, 1, max_n);
  const auto kind = static_cast<SigKind>(uniform(rng, 0, 3));
  RandomSignature sig = random_signature(rng, kind, n_in, max_n);
  Distribution alpha = random_distribution(rng, n_in, procs, covering);
  Distribution gamma = random_distribution(rng, sig.n_out, procs, true);
  CombinerSpec comb = random_combiner(rng, sig.sigma);
  return Kernel("k", std::move(alpha), std::move(gamma), std::move(sig.sigma), std::move(comb));
}

/// 1-3 chained kernels, all objects over `procs` processors, always coverable.
inline Program random_program(Rng& rng, Index max_n, int procs) {
  const int nkernels = static_cast<int>(uniform(rng, 1, 3));
  std::vector<ObjectDecl> objects;
  std::vector<KernelDecl> kernels;
  Index n = uniform(rng, 1, max_n);
  objects.push_back({"x0", random_distribution(rng, n, procs)});
  for (int k = 0; k < nkernels; ++k) {
    const auto kind = static_cast<SigKind>(uniform(rng, 0, 3));
    RandomSignature sig = random_signature(rng, kind, n, max_n);
    const std::string out = "x" + std::to_string(k + 1);
    objects.push_back({out, random_distribution(rng, sig.n_out, procs)});
    CombinerSpec comb = random_combiner(rng, sig.sigma);
    kernels.push_back({"k" + std::to_string(k), "x" + std::to_string(k), out, std::move(sig.sigma),
                       std::move(comb)});
    n = objects.back().distribution.global_size();
  }
  return Program(std::move(objects), std::move(kernels));
}

inline std::vector<Value> random_values(Rng& rng, Index n) {
  std::vector<Value> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = uniform(rng, -9, 9);
  return v;
}

}  // namespace distplan::testing
