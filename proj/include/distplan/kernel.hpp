#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "distplan/distribution.hpp"
#include "distplan/signature.hpp"

namespace distplan {

using Value = std::int64_t;

struct SumCombiner {};
struct MaxCombiner {};
/// Weighted sum with weights keyed by stencil offset (input index - output
/// index), e.g. {-1: -1, 0: 2, 1: -1} for the 1D heat operator.
struct WeightedCombiner {
  std::map<Index, Value> weights;
};

using CombinerSpec = std::variant<SumCombiner, WeightedCombiner, MaxCombiner>;

/// Applies `combiner` for output index `out` to its gathered inputs;
/// `inputs` holds (input index, value) in ascending index order. An empty
/// argument list yields 0. Throws DomainError on overflow.
Value combine(const CombinerSpec& combiner, Index out,
              std::span<const std::pair<Index, Value>> inputs);

const char* combiner_kind(const CombinerSpec& combiner) noexcept;

/**
 * One data-parallel operation y = f(x): x is distributed by `alpha`, y by
 * `gamma`, and output i is computed from the inputs `sigma(i)`.
 */
class Kernel {
 public:
  /// Throws ValidationError when alpha and gamma disagree on P, when sigma's
  /// input bound differs from alpha's index space, or when a weighted
  /// combiner does not fit the signature.
  Kernel(std::string name, Distribution alpha, Distribution gamma, SignatureFunction sigma,
         CombinerSpec combiner = SumCombiner{});

  const std::string& name() const noexcept { return name_; }
  const Distribution& alpha() const noexcept { return alpha_; }
  const Distribution& gamma() const noexcept { return gamma_; }
  const SignatureFunction& sigma() const noexcept { return sigma_; }
  const CombinerSpec& combiner() const noexcept { return combiner_; }
  int nprocs() const noexcept { return alpha_.nprocs(); }

 private:
  std::string name_;
  Distribution alpha_;
  Distribution gamma_;
  SignatureFunction sigma_;
  CombinerSpec combiner_;
};

/// beta = sigma(gamma): for each p, every input index p needs to compute
/// gamma(p). Generally overlaps across processors.
Distribution derive_beta(const Kernel& k);

/// alpha(p) ⊇ beta(p) for every p, i.e. no communication is needed.
bool is_local(const Kernel& k);

/// Ascending q with alpha(q) ∩ beta(p) non-empty, including p itself.
std::vector<ProcId> predecessors(const Kernel& k, ProcId p);
std::vector<ProcId> predecessors(const Kernel& k, const Distribution& beta, ProcId p);

/// Throws UncoverableError naming the first (p, i) with i in beta(p) owned
/// by nobody.
void check_coverage(const Kernel& k, const Distribution& beta);

enum class SenderPolicy {
  /// M(q->p) = alpha(q) ∩ beta(p) for every overlapping pair: the full
  /// dependency relation.
  AllOwners,
  /// Each needed index comes from exactly one sender: p itself when it owns
  /// the index, otherwise the lowest-rank owner.
  LowestOwner,
};

const char* policy_name(SenderPolicy policy) noexcept;
/// "all-owners" | "lowest-owner"; throws ValidationError otherwise.
SenderPolicy parse_policy(const std::string& name);

struct Message {
  ProcId from;
  ProcId to;
  IndexSet indices;  // non-empty
  bool local = false;  // from == to: a copy, not a transfer
};

struct MessagePlan {
  std::string kernel;
  SenderPolicy policy = SenderPolicy::LowestOwner;
  std::vector<Message> messages;  // sorted by (to, from)
  Distribution beta;  // per-receiver needed sets

  /// Messages addressed to p, ascending sender.
  std::vector<const Message*> incoming(ProcId p) const;
};

MessagePlan message_plan(const Kernel& k, SenderPolicy policy);

struct CommunicationStats {
  std::size_t cross_messages = 0;
  std::size_t cross_volume = 0;
  std::size_t local_messages = 0;
  std::size_t local_volume = 0;
  /// |beta(p) \ alpha(p)| per receiver and its maximum.
  std::vector<std::size_t> halo_sizes;
  std::size_t max_halo = 0;

  friend bool operator==(const CommunicationStats&, const CommunicationStats&) = default;
};

/// Local copies are counted separately and excluded from cross volume. The
/// halo of p is beta(p) minus its local copy, which equals beta(p) \ alpha(p).
CommunicationStats communication_stats(const MessagePlan& plan);

}  // namespace distplan
