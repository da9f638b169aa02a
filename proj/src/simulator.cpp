#include "distplan/simulator.hpp"

#include <algorithm>

namespace distplan {

namespace {

void check_input(const Program& prog, std::span<const Value> input) {
  const Index n = prog.input_object().distribution.global_size();
  if (static_cast<Index>(input.size()) != n) {
    throw DomainError("input has " + std::to_string(input.size()) + " values, object '" +
                      prog.input_object().name + "' has size " + std::to_string(n));
  }
}

}  // namespace

bool LocalStore::has(Index i) const {
  auto pos = owned_.position(i);
  return pos && filled_[*pos];
}

Value LocalStore::get(Index i) const {
  auto pos = owned_.position(i);
  if (!pos) throw SimulationError("read of index " + std::to_string(i) + " not held locally");
  if (!filled_[*pos]) throw SimulationError("read of unfilled slot " + std::to_string(i));
  return values_[*pos];
}

void LocalStore::put(Index i, Value v) {
  auto pos = owned_.position(i);
  if (!pos) throw SimulationError("write of index " + std::to_string(i) + " not held locally");
  if (filled_[*pos] && values_[*pos] != v) {
    throw SimulationError("conflicting values delivered for index " + std::to_string(i));
  }
  values_[*pos] = v;
  filled_[*pos] = true;
}

std::optional<Index> LocalStore::first_unfilled() const {
  auto it = std::find(filled_.begin(), filled_.end(), false);
  if (it == filled_.end()) return std::nullopt;
  std::size_t want = static_cast<std::size_t>(it - filled_.begin());
  for (const auto& iv : owned_.intervals()) {
    if (want < static_cast<std::size_t>(iv.size())) return iv.lo + static_cast<Index>(want);
    want -= static_cast<std::size_t>(iv.size());
  }
  return std::nullopt;
}

std::vector<Value> run_sequential(const Program& prog, std::span<const Value> input) {
  check_input(prog, input);
  std::vector<Value> x(input.begin(), input.end());
  std::vector<std::pair<Index, Value>> args;
  for (const Kernel& k : prog.kernels()) {
    check_coverage(k, derive_beta(k));
    std::vector<Value> y(static_cast<std::size_t>(k.gamma().global_size()), 0);
    const IndexSet span = k.gamma().global_span();
    for (const auto& iv : span.intervals()) {
      for (Index i = iv.lo; i < iv.hi; ++i) {
        args.clear();
        const IndexSet deps = k.sigma().apply_index(i);
        for (const auto& dep : deps.intervals()) {
          for (Index j = dep.lo; j < dep.hi; ++j) args.emplace_back(j, x[j]);
        }
        y[i] = combine(k.combiner(), i, args);
      }
    }
    x = std::move(y);
  }
  return x;
}

DistributedResult run_distributed(const Program& prog, std::span<const Value> input,
                                  SenderPolicy policy) {
  check_input(prog, input);
  DistributedResult result;

  const Distribution& alpha0 = prog.kernels().front().alpha();
  DataObject current{prog.input_object().name, alpha0, {}};
  for (const auto& owned : alpha0.sets()) {
    LocalStore store(owned);
    for (const auto& iv : owned.intervals()) {
      for (Index i = iv.lo; i < iv.hi; ++i) store.put(i, input[i]);
    }
    current.stores.push_back(std::move(store));
  }

  std::vector<std::pair<Index, Value>> args;
  for (std::size_t k = 0; k < prog.kernels().size(); ++k) {
    const Kernel& kernel = prog.kernels()[k];
    const MessagePlan plan = message_plan(kernel, policy);
    result.stats.push_back(communication_stats(plan));

    std::vector<LocalStore> buffers;
    for (const auto& need : plan.beta.sets()) buffers.emplace_back(need);

    for (const Message& m : plan.messages) {
      const LocalStore& src = current.stores[m.from.rank];
      LocalStore& dst = buffers[m.to.rank];
      for (const auto& iv : m.indices.intervals()) {
        for (Index i = iv.lo; i < iv.hi; ++i) dst.put(i, src.get(i));
      }
      result.trace.push_back({TraceEvent::Kind::Message, kernel.name(), m.from.rank, m.to.rank,
                              m.indices, m.local});
    }

    DataObject next{prog.kernel_decls()[k].output, kernel.gamma(), {}};
    for (int p = 0; p < kernel.nprocs(); ++p) {
      const LocalStore& buf = buffers[p];
      if (auto hole = buf.first_unfilled()) {
        throw SimulationError("kernel '" + kernel.name() + "': processor " + std::to_string(p) +
                              " has no value for needed index " + std::to_string(*hole));
      }
      const IndexSet& mine = kernel.gamma().lookup({p});
      LocalStore out(mine);
      for (const auto& iv : mine.intervals()) {
        for (Index i = iv.lo; i < iv.hi; ++i) {
          args.clear();
          const IndexSet deps = kernel.sigma().apply_index(i);
          for (const auto& dep : deps.intervals()) {
            for (Index j = dep.lo; j < dep.hi; ++j) args.emplace_back(j, buf.get(j));
          }
          out.put(i, combine(kernel.combiner(), i, args));
        }
      }
      next.stores.push_back(std::move(out));
      result.trace.push_back({TraceEvent::Kind::Compute, kernel.name(), p, p, mine, false});
    }

    // Every processor computed its own copy; copies of an index must agree.
    const IndexSet span = kernel.gamma().global_span();
    for (const auto& iv : span.intervals()) {
      for (Index i = iv.lo; i < iv.hi; ++i) {
        std::optional<Value> seen;
        for (const auto& store : next.stores) {
          if (!store.owned().contains(i)) continue;
          Value v = store.get(i);
          if (seen && *seen != v) {
            result.replica_mismatches.push_back({next.name, i});
            break;
          }
          seen = v;
        }
      }
    }
    current = std::move(next);
  }

  result.output.assign(static_cast<std::size_t>(current.distribution.global_size()), 0);
  const IndexSet span = current.distribution.global_span();
  for (const auto& iv : span.intervals()) {
    for (Index i = iv.lo; i < iv.hi; ++i) {
      // stores are in rank order, so the first holder is the lowest-rank owner
      for (const auto& store : current.stores) {
        if (store.owned().contains(i)) {
          result.output[i] = store.get(i);
          break;
        }
      }
    }
  }
  return result;
}

VerifyReport verify(const Program& prog, std::span<const Value> input, SenderPolicy policy) {
  VerifyReport report;
  report.sequential = run_sequential(prog, input);
  DistributedResult dist = run_distributed(prog, input, policy);
  report.distributed = std::move(dist.output);
  report.trace = std::move(dist.trace);
  report.stats = std::move(dist.stats);
  report.replicas_agree = dist.replica_mismatches.empty();
  report.equal = report.sequential == report.distributed;
  if (!report.equal) {
    const std::size_t n = std::min(report.sequential.size(), report.distributed.size());
    std::size_t i = 0;
    while (i < n && report.sequential[i] == report.distributed[i]) ++i;
    report.first_difference = static_cast<Index>(i);
  }
  return report;
}

}  // namespace distplan
