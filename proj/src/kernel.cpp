#include "distplan/kernel.hpp"

#include <algorithm>

namespace distplan {

namespace {

Value add(Value a, Value b) {
  Value r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("value overflow in combiner");
  return r;
}

Value mul(Value a, Value b) {
  Value r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("value overflow in combiner");
  return r;
}

}  // namespace

Value combine(const CombinerSpec& combiner, Index out,
              std::span<const std::pair<Index, Value>> inputs) {
  if (const auto* w = std::get_if<WeightedCombiner>(&combiner)) {
    Value acc = 0;
    for (const auto& [j, v] : inputs) {
      auto it = w->weights.find(j - out);
      if (it == w->weights.end()) {
        throw DomainError("weighted combiner has no weight for offset " + std::to_string(j - out));
      }
      acc = add(acc, mul(it->second, v));
    }
    return acc;
  }
  if (std::holds_alternative<MaxCombiner>(combiner)) {
    if (inputs.empty()) return 0;
    Value m = inputs.front().second;
    for (const auto& [j, v] : inputs) m = std::max(m, v);
    return m;
  }
  Value acc = 0;
  for (const auto& [j, v] : inputs) acc = add(acc, v);
  return acc;
}

const char* combiner_kind(const CombinerSpec& combiner) noexcept {
  switch (combiner.index()) {
    case 0: return "sum";
    case 1: return "weighted";
    default: return "max";
  }
}

Kernel::Kernel(std::string name, Distribution alpha, Distribution gamma, SignatureFunction sigma,
               CombinerSpec combiner)
    : name_(std::move(name)),
      alpha_(std::move(alpha)),
      gamma_(std::move(gamma)),
      sigma_(std::move(sigma)),
      combiner_(std::move(combiner)) {
  if (alpha_.nprocs() != gamma_.nprocs()) {
    throw ValidationError(name_, "input distribution has " + std::to_string(alpha_.nprocs()) +
                                     " processors but output has " +
                                     std::to_string(gamma_.nprocs()));
  }
  if (sigma_.domain_bound() != alpha_.global_size()) {
    throw ValidationError(name_, "signature input bound " + std::to_string(sigma_.domain_bound()) +
                                     " differs from input size " +
                                     std::to_string(alpha_.global_size()));
  }
  if (const auto* w = std::get_if<WeightedCombiner>(&combiner_)) {
    const auto* st = std::get_if<StencilSignature>(&sigma_.rule());
    if (st == nullptr) throw ValidationError(name_, "weighted combiner requires a stencil signature");
    for (Index d : st->offsets) {
      if (!w->weights.contains(d)) {
        throw ValidationError(name_, "weighted combiner has no weight for offset " + std::to_string(d));
      }
    }
  }
}

Distribution derive_beta(const Kernel& k) { return k.sigma().apply_distribution(k.gamma()); }

bool is_local(const Kernel& k) {
  const Distribution beta = derive_beta(k);
  for (int p = 0; p < k.nprocs(); ++p) {
    if (!is_superset(k.alpha().lookup({p}), beta.lookup({p}))) return false;
  }
  return true;
}

std::vector<ProcId> predecessors(const Kernel& k, const Distribution& beta, ProcId p) {
  const IndexSet& need = beta.lookup(p);
  std::vector<ProcId> out;
  for (int q = 0; q < k.nprocs(); ++q) {
    if (intersects(k.alpha().lookup({q}), need)) out.push_back({q});
  }
  return out;
}

std::vector<ProcId> predecessors(const Kernel& k, ProcId p) {
  return predecessors(k, derive_beta(k), p);
}

void check_coverage(const Kernel& k, const Distribution& beta) {
  const IndexSet span = k.alpha().global_span();
  for (int p = 0; p < k.nprocs(); ++p) {
    IndexSet missing = difference(beta.lookup({p}), span);
    if (!missing.empty()) throw UncoverableError(k.name(), p, missing.front());
  }
}

const char* policy_name(SenderPolicy policy) noexcept {
  return policy == SenderPolicy::AllOwners ? "all-owners" : "lowest-owner";
}

SenderPolicy parse_policy(const std::string& name) {
  if (name == "all-owners") return SenderPolicy::AllOwners;
  if (name == "lowest-owner") return SenderPolicy::LowestOwner;
  throw ValidationError("policy", "unknown sender policy '" + name + "'");
}

std::vector<const Message*> MessagePlan::incoming(ProcId p) const {
  std::vector<const Message*> out;
  auto first = std::lower_bound(messages.begin(), messages.end(), p,
                                [](const Message& m, ProcId to) { return m.to < to; });
  for (auto it = first; it != messages.end() && it->to == p; ++it) out.push_back(&*it);
  return out;
}

MessagePlan message_plan(const Kernel& k, SenderPolicy policy) {
  MessagePlan plan{k.name(), policy, {}, derive_beta(k)};
  check_coverage(k, plan.beta);
  const Distribution& alpha = k.alpha();
  for (int p = 0; p < k.nprocs(); ++p) {
    const IndexSet& need = plan.beta.lookup({p});
    if (policy == SenderPolicy::AllOwners) {
      for (int q = 0; q < k.nprocs(); ++q) {
        IndexSet m = intersect(alpha.lookup({q}), need);
        if (!m.empty()) plan.messages.push_back({{q}, {p}, std::move(m), q == p});
      }
      continue;
    }
    // Self first, then the remainder from ascending ranks.
    IndexSet own = intersect(alpha.lookup({p}), need);
    IndexSet remaining = difference(need, own);
    std::vector<Message> row;
    if (!own.empty()) row.push_back({{p}, {p}, std::move(own), true});
    for (int q = 0; q < k.nprocs() && !remaining.empty(); ++q) {
      if (q == p) continue;
      IndexSet m = intersect(alpha.lookup({q}), remaining);
      if (m.empty()) continue;
      remaining = difference(remaining, m);
      row.push_back({{q}, {p}, std::move(m), false});
    }
    std::sort(row.begin(), row.end(),
              [](const Message& a, const Message& b) { return a.from < b.from; });
    for (auto& m : row) plan.messages.push_back(std::move(m));
  }
  return plan;
}

CommunicationStats communication_stats(const MessagePlan& plan) {
  CommunicationStats s;
  for (const auto& m : plan.messages) {
    if (m.local) {
      ++s.local_messages;
      s.local_volume += m.indices.size();
    } else {
      ++s.cross_messages;
      s.cross_volume += m.indices.size();
    }
  }
  s.halo_sizes.reserve(plan.beta.nprocs());
  for (int p = 0; p < plan.beta.nprocs(); ++p) s.halo_sizes.push_back(plan.beta.lookup({p}).size());
  for (const auto& m : plan.messages) {
    if (m.local) s.halo_sizes[m.to.rank] -= m.indices.size();
  }
  for (std::size_t halo : s.halo_sizes) {
    s.max_halo = std::max(s.max_halo, halo);
  }
  return s;
}

}  // namespace distplan
