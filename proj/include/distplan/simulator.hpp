#pragma once

#include <optional>
#include <string>
#include <vector>

#include "distplan/program.hpp"

namespace distplan {

/// Values of one object on one processor, dense over the owned set.
class LocalStore {
 public:
  LocalStore() = default;
  explicit LocalStore(IndexSet owned)
      : owned_(std::move(owned)), values_(owned_.size(), 0), filled_(owned_.size(), false) {}

  const IndexSet& owned() const noexcept { return owned_; }
  bool has(Index i) const;
  /// Throws SimulationError if i is not owned or not yet written.
  Value get(Index i) const;
  /// Throws SimulationError if i is not owned, or if it was already written
  /// with a different value.
  void put(Index i, Value v);
  /// Smallest owned index never written, if any.
  std::optional<Index> first_unfilled() const;

 private:
  IndexSet owned_;
  std::vector<Value> values_;
  std::vector<bool> filled_;
};

/// A distributed object: one store per processor.
struct DataObject {
  std::string name;
  Distribution distribution;
  std::vector<LocalStore> stores;
};

struct TraceEvent {
  enum class Kind { Message, Compute };
  Kind kind = Kind::Message;
  std::string kernel;
  int from = 0;  // sender; for compute events, the computing processor
  int to = 0;    // receiver; equal to `from` for compute events
  IndexSet indices;
  bool local = false;

  std::size_t count() const noexcept { return indices.size(); }
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Per kernel: message events sorted by (receiver, sender), then compute
/// events by processor.
using ExecutionTrace = std::vector<TraceEvent>;

/// Global reference execution. `input` is the dense value array of the
/// program input object. Returns the dense output array; indices outside
/// the output span are 0.
std::vector<Value> run_sequential(const Program& prog, std::span<const Value> input);

struct ReplicaMismatch {
  std::string object;
  Index index = 0;
};

struct DistributedResult {
  std::vector<Value> output;
  ExecutionTrace trace;
  std::vector<CommunicationStats> stats;  // one per kernel
  std::vector<ReplicaMismatch> replica_mismatches;
};

/// Executes the program using only the derived message plans: scatter by
/// alpha, deliver M(q->p) from q's store into p's beta buffer, compute
/// gamma(p) from that buffer alone, gather from the lowest-rank owner.
DistributedResult run_distributed(const Program& prog, std::span<const Value> input,
                                  SenderPolicy policy);

struct VerifyReport {
  bool equal = false;
  std::optional<Index> first_difference;
  bool replicas_agree = true;
  std::vector<Value> sequential;
  std::vector<Value> distributed;
  ExecutionTrace trace;
  std::vector<CommunicationStats> stats;

  bool ok() const noexcept { return equal && replicas_agree; }
};

VerifyReport verify(const Program& prog, std::span<const Value> input, SenderPolicy policy);

}  // namespace distplan
