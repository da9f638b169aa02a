#include "distplan/program.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace distplan {

namespace {

std::string kernel_field(std::size_t k, const char* what) {
  return "kernels[" + std::to_string(k) + "]." + what;
}

}  // namespace

Program::Program(std::vector<ObjectDecl> objects, std::vector<KernelDecl> kernels)
    : objects_(std::move(objects)), decls_(std::move(kernels)) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    const std::string field = "objects[" + std::to_string(i) + "].name";
    if (objects_[i].name.empty()) throw ValidationError(field, "object name is empty");
    if (!names.insert(objects_[i].name).second) {
      throw ValidationError(field, "duplicate object '" + objects_[i].name + "'");
    }
  }
  if (decls_.empty()) throw ValidationError("kernels", "program has no kernels");

  std::set<std::string> written;
  for (const auto& d : decls_) written.insert(d.output);

  std::set<std::string> produced;
  for (std::size_t k = 0; k < decls_.size(); ++k) {
    const KernelDecl& d = decls_[k];
    if (d.name.empty()) throw ValidationError(kernel_field(k, "name"), "kernel name is empty");
    if (!names.contains(d.input)) {
      throw ValidationError(kernel_field(k, "input"), "unknown object '" + d.input + "'");
    }
    if (!names.contains(d.output)) {
      throw ValidationError(kernel_field(k, "output"), "unknown object '" + d.output + "'");
    }
    if (d.input == d.output) {
      throw ValidationError(kernel_field(k, "output"), "kernel writes its own input '" + d.input + "'");
    }
    if (!produced.insert(d.output).second) {
      throw ValidationError(kernel_field(k, "output"), "object '" + d.output + "' is written twice");
    }
    if (k == 0) {
      if (written.contains(d.input)) {
        throw ValidationError(kernel_field(k, "input"),
                              "first kernel must read a program input, but '" + d.input +
                                  "' is written by a kernel");
      }
    } else if (d.input != decls_[k - 1].output) {
      throw ValidationError(kernel_field(k, "input"),
                            "kernel must read the output of the previous kernel ('" +
                                decls_[k - 1].output + "'), got '" + d.input + "'");
    }
    try {
      kernels_.emplace_back(d.name, object(d.input).distribution, object(d.output).distribution,
                            d.sigma, d.combiner);
    } catch (const ValidationError& e) {
      throw ValidationError("kernels[" + std::to_string(k) + "]", e.what());
    }
  }
}

const ObjectDecl& Program::object(const std::string& name) const {
  auto it = std::find_if(objects_.begin(), objects_.end(),
                         [&](const ObjectDecl& o) { return o.name == name; });
  if (it == objects_.end()) throw ValidationError("objects", "unknown object '" + name + "'");
  return *it;
}

std::string Task::id() const { return "k" + std::to_string(layer) + "_p" + std::to_string(proc.rank); }

std::size_t TaskGraph::task_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.size();
  return n;
}

std::vector<const TaskEdge*> TaskGraph::in_edges(const Task& t) const {
  std::vector<const TaskEdge*> out;
  for (const auto& e : edges) {
    if (e.to == t) out.push_back(&e);
  }
  return out;
}

TaskGraph build_task_graph(const Program& prog) {
  TaskGraph g;
  const auto& kernels = prog.kernels();
  g.layer_names.push_back(prog.input_object().name);

  std::vector<Task> sources;
  const Distribution& input = kernels.front().alpha();
  for (int p = 0; p < input.nprocs(); ++p) {
    if (!input.lookup({p}).empty()) sources.push_back({0, {p}});
  }
  g.layers.push_back(std::move(sources));

  for (std::size_t k = 0; k < kernels.size(); ++k) {
    const int layer = static_cast<int>(k) + 1;
    g.layer_names.push_back(kernels[k].name());
    std::vector<Task> tasks;
    for (int p = 0; p < kernels[k].nprocs(); ++p) tasks.push_back({layer, {p}});
    g.layers.push_back(std::move(tasks));

    // Plan messages are already sorted by (to, from).
    MessagePlan plan = message_plan(kernels[k], SenderPolicy::AllOwners);
    for (auto& m : plan.messages) {
      g.edges.push_back({{layer - 1, m.from}, {layer, m.to}, std::move(m.indices)});
    }
  }
  return g;
}

std::vector<std::vector<Task>> topological_layers(const TaskGraph& g) { return g.layers; }

int critical_path_length(const TaskGraph& g) {
  std::map<Task, int> depth;
  int best = 0;
  for (const auto& layer : g.layers) {
    for (const auto& t : layer) depth[t] = 1;
  }
  // Edges are ordered by consumer layer, so producers are final when read.
  for (const auto& e : g.edges) depth[e.to] = std::max(depth[e.to], depth[e.from] + 1);
  for (const auto& [t, d] : depth) best = std::max(best, d);
  return best;
}

std::string to_dot(const TaskGraph& g) {
  std::ostringstream os;
  os << "digraph taskgraph {\n";
  os << "  rankdir=TB;\n";
  os << "  node [shape=box];\n";
  for (std::size_t l = 0; l < g.layers.size(); ++l) {
    os << "  subgraph cluster_layer" << l << " {\n";
    os << "    label=\"" << (l == 0 ? "input " : "kernel ") << g.layer_names[l] << "\";\n";
    for (const auto& t : g.layers[l]) {
      os << "    " << t.id() << " [label=\"" << g.layer_names[l] << "@p" << t.proc.rank << "\"];\n";
    }
    os << "  }\n";
  }
  for (const auto& e : g.edges) {
    os << "  " << e.from.id() << " -> " << e.to.id() << " [label=\"" << e.indices.to_string()
       << "\"";
    if (e.from.proc == e.to.proc) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace distplan
