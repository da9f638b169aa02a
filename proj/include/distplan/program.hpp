#pragma once

#include <string>
#include <vector>

#include "distplan/kernel.hpp"

namespace distplan {

/// A named distributed object; its size is `distribution.global_size()`.
struct ObjectDecl {
  std::string name;
  Distribution distribution;
};

struct KernelDecl {
  std::string name;
  std::string input;
  std::string output;
  SignatureFunction sigma;
  CombinerSpec combiner = SumCombiner{};
};

/**
 * A chain of kernels over named objects.
 *
 * Kernel 0 reads a program input (an object no kernel writes); kernel k > 0
 * reads exactly the output of kernel k-1. Each object is written at most
 * once. Each kernel's alpha and gamma are the distributions of its input and
 * output objects.
 */
class Program {
 public:
  /// Throws ValidationError with a field path on any well-formedness
  /// violation, e.g. "kernels[1].input".
  Program(std::vector<ObjectDecl> objects, std::vector<KernelDecl> kernels);

  const std::vector<ObjectDecl>& objects() const noexcept { return objects_; }
  const std::vector<KernelDecl>& kernel_decls() const noexcept { return decls_; }
  const std::vector<Kernel>& kernels() const noexcept { return kernels_; }

  const ObjectDecl& object(const std::string& name) const;
  const ObjectDecl& input_object() const { return object(decls_.front().input); }
  const ObjectDecl& output_object() const { return object(decls_.back().output); }

 private:
  std::vector<ObjectDecl> objects_;
  std::vector<KernelDecl> decls_;
  std::vector<Kernel> kernels_;
};

/// A kernel restricted to one processor. Layer 0 holds synthetic source
/// tasks for the program input; kernel j is layer j + 1.
struct Task {
  int layer = 0;
  ProcId proc;

  /// "k<layer>_p<rank>"
  std::string id() const;

  friend auto operator<=>(const Task&, const Task&) = default;
};

struct TaskEdge {
  Task from;
  Task to;
  IndexSet indices;
};

struct TaskGraph {
  /// layer_names[0] is the program input object, then one kernel name per layer.
  std::vector<std::string> layer_names;
  std::vector<std::vector<Task>> layers;
  /// Sorted by (to.layer, to.proc, from.proc).
  std::vector<TaskEdge> edges;

  std::size_t task_count() const;
  std::vector<const TaskEdge*> in_edges(const Task& t) const;
};

/// Edges into layer k+1 are the all-owners message plan of kernel k. Source
/// tasks exist only for processors whose share of the input is non-empty;
/// every compute layer has one task per processor, even with empty gamma(p).
/// Throws UncoverableError naming the kernel.
TaskGraph build_task_graph(const Program& prog);

std::vector<std::vector<Task>> topological_layers(const TaskGraph& g);

/// Tasks on the longest path; unit task cost, zero edge cost.
int critical_path_length(const TaskGraph& g);

/// Graphviz text, byte-stable for a given graph.
std::string to_dot(const TaskGraph& g);

}  // namespace distplan
