#include "distplan/json_io.hpp"

#include <fstream>
#include <sstream>

namespace distplan::json_io {

namespace {

std::string at(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(at(path, key), "missing field");
  return *it;
}

Index as_index(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError(path, "expected an integer");
  return j.get<Index>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  return j;
}

std::vector<Index> index_list(const json& j, const std::string& path) {
  std::vector<Index> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) out.push_back(as_index(j[i], at(path, i)));
  return out;
}

int as_nprocs(const json& j, const std::string& path) {
  Index p = as_index(j, path);
  if (p < 1 || p > (1 << 20)) throw ValidationError(path, "processor count must be in [1, 2^20]");
  return static_cast<int>(p);
}

// Library DomainErrors become ValidationErrors at the descriptor's path.
template <class F>
auto addressed(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ValidationError(path, e.what());
  }
}

}  // namespace

json to_json(const IndexSet& s) {
  json out = json::array();
  for (const auto& iv : s.intervals()) out.push_back({iv.lo, iv.hi});
  return out;
}

json to_json(const Distribution& d) {
  json sets = json::array();
  for (const auto& s : d.sets()) sets.push_back(to_json(s));
  return {{"kind", "explicit"}, {"N", d.global_size()}, {"P", d.nprocs()}, {"sets", std::move(sets)}};
}

json to_json(const CommunicationStats& stats) {
  return {{"cross_messages", stats.cross_messages}, {"cross_volume", stats.cross_volume},
          {"local_messages", stats.local_messages}, {"local_volume", stats.local_volume},
          {"halo_sizes", stats.halo_sizes},         {"max_halo", stats.max_halo}};
}

json to_json(const MessagePlan& plan) {
  json messages = json::array();
  for (const auto& m : plan.messages) {
    messages.push_back(
        {{"from", m.from.rank}, {"to", m.to.rank}, {"indices", to_json(m.indices)}, {"local", m.local}});
  }
  return {{"kernel", plan.kernel}, {"policy", policy_name(plan.policy)}, {"messages", std::move(messages)}};
}

json to_json(const TaskGraph& g) {
  json tasks = json::array();
  for (std::size_t l = 0; l < g.layers.size(); ++l) {
    for (const auto& t : g.layers[l]) {
      tasks.push_back({{"id", t.id()},
                       {"layer", t.layer},
                       {"proc", t.proc.rank},
                       {l == 0 ? "object" : "kernel", g.layer_names[l]}});
    }
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"from", e.from.id()}, {"to", e.to.id()}, {"indices", to_json(e.indices)}});
  }
  return {{"tasks", std::move(tasks)},
          {"edges", std::move(edges)},
          {"layers", g.layer_names},
          {"critical_path", critical_path_length(g)}};
}

json to_json(const TraceEvent& ev) {
  if (ev.kind == TraceEvent::Kind::Compute) {
    return {{"ev", "compute"}, {"kernel", ev.kernel}, {"proc", ev.from},
            {"indices", to_json(ev.indices)}, {"count", ev.count()}};
  }
  return {{"ev", "msg"},     {"kernel", ev.kernel},           {"from", ev.from},
          {"to", ev.to},     {"indices", to_json(ev.indices)}, {"count", ev.count()},
          {"local", ev.local}};
}

std::string trace_lines(const ExecutionTrace& trace) {
  std::string out;
  for (const auto& ev : trace) {
    out += to_json(ev).dump();
    out += '\n';
  }
  return out;
}

IndexSet parse_index_set(const json& j, const std::string& path) {
  std::vector<Interval> ivs;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    const std::string p = at(path, i);
    if (!j[i].is_array() || j[i].size() != 2) throw ValidationError(p, "expected a [lo, hi] pair");
    Interval iv{as_index(j[i][0], at(p, 0)), as_index(j[i][1], at(p, 1))};
    if (iv.lo < 0 || iv.hi < iv.lo) throw ValidationError(p, "interval must satisfy 0 <= lo <= hi");
    ivs.push_back(iv);
  }
  return IndexSet::from_intervals(std::move(ivs));
}

Distribution parse_distribution(const json& j, const std::string& path, Index n) {
  const std::string kind = as_string(require(j, "kind", path), at(path, "kind"));
  if (j.contains("N")) {
    Index given = as_index(j["N"], at(path, "N"));
    if (n >= 0 && given != n) {
      throw ValidationError(at(path, "N"), "distribution size " + std::to_string(given) +
                                               " differs from object size " + std::to_string(n));
    }
    n = given;
  }
  if (n < 0) throw ValidationError(at(path, "N"), "missing global size");

  if (kind == "explicit") {
    const json& sets = as_array(require(j, "sets", path), at(path, "sets"));
    std::vector<IndexSet> parsed;
    for (std::size_t p = 0; p < sets.size(); ++p) parsed.push_back(parse_index_set(sets[p], at(at(path, "sets"), p)));
    if (j.contains("P") && as_nprocs(j["P"], at(path, "P")) != static_cast<int>(parsed.size())) {
      throw ValidationError(at(path, "P"), "P differs from the number of sets");
    }
    return addressed(at(path, "sets"), [&] { return Distribution::explicit_sets(n, std::move(parsed)); });
  }
  const int procs = as_nprocs(require(j, "P", path), at(path, "P"));
  return addressed(path, [&] {
    if (kind == "block") return Distribution::block(n, procs);
    if (kind == "cyclic") return Distribution::cyclic(n, procs);
    if (kind == "replicated") return Distribution::replicated(n, procs);
    throw ValidationError(at(path, "kind"), "unknown distribution kind '" + kind + "'");
  });
}

SignatureFunction parse_signature(const json& j, const std::string& path, Index n_in) {
  const std::string kind = as_string(require(j, "kind", path), at(path, "kind"));
  if (j.contains("n_in")) {
    Index given = as_index(j["n_in"], at(path, "n_in"));
    if (given != n_in) {
      throw ValidationError(at(path, "n_in"), "n_in " + std::to_string(given) +
                                                  " differs from input object size " +
                                                  std::to_string(n_in));
    }
  }
  return addressed(path, [&] {
    if (kind == "stencil") {
      return SignatureFunction::stencil(index_list(require(j, "offsets", path), at(path, "offsets")), n_in);
    }
    if (kind == "affine") {
      return SignatureFunction::affine(as_index(require(j, "stride", path), at(path, "stride")),
                                       index_list(require(j, "offsets", path), at(path, "offsets")),
                                       n_in);
    }
    if (kind == "total") return SignatureFunction::total(n_in);
    if (kind == "sparse") {
      if (j.contains("matrix")) {
        const std::string mpath = at(path, "matrix");
        std::vector<std::vector<int>> dense;
        for (std::size_t r = 0; r < as_array(j["matrix"], mpath).size(); ++r) {
          std::vector<int> row;
          for (std::size_t c = 0; c < as_array(j["matrix"][r], at(mpath, r)).size(); ++c) {
            Index v = as_index(j["matrix"][r][c], at(at(mpath, r), c));
            if (v != 0 && v != 1) throw ValidationError(at(at(mpath, r), c), "matrix entries must be 0 or 1");
            row.push_back(static_cast<int>(v));
          }
          dense.push_back(std::move(row));
        }
        return SignatureFunction::from_dense(dense, n_in);
      }
      const std::string rpath = at(path, "rows");
      const json& rows = require(j, "rows", path);
      if (!rows.is_object()) throw ValidationError(rpath, "expected an object keyed by output index");
      std::map<Index, IndexSet> parsed;
      for (const auto& [key, val] : rows.items()) {
        Index row = -1;
        std::size_t used = 0;
        try {
          row = std::stoll(key, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != key.size() || row < 0) throw ValidationError(at(rpath, key), "row key must be a non-negative integer");
        parsed.emplace(row, parse_index_set(val, at(rpath, key)));
      }
      return SignatureFunction::sparse(std::move(parsed), n_in);
    }
    throw ValidationError(at(path, "kind"), "unknown signature kind '" + kind + "'");
  });
}

CombinerSpec parse_combiner(const json& j, const std::string& path) {
  const std::string kind = as_string(require(j, "kind", path), at(path, "kind"));
  if (kind == "sum") return SumCombiner{};
  if (kind == "max") return MaxCombiner{};
  if (kind == "weighted") {
    const std::string wpath = at(path, "weights");
    const json& weights = require(j, "weights", path);
    if (!weights.is_object()) throw ValidationError(wpath, "expected an object keyed by stencil offset");
    WeightedCombiner w;
    for (const auto& [key, val] : weights.items()) {
      Index offset = 0;
      std::size_t used = 0;
      try {
        offset = std::stoll(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size()) throw ValidationError(at(wpath, key), "weight key must be an integer offset");
      w.weights[offset] = as_index(val, at(wpath, key));
    }
    return w;
  }
  throw ValidationError(at(path, "kind"), "unknown combiner kind '" + kind + "'");
}

Program parse_program(const json& j) {
  if (!j.is_object()) throw ValidationError("", "program file must be a JSON object");
  std::vector<ObjectDecl> objects;
  const json& objs = as_array(require(j, "objects", ""), "objects");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const std::string path = at("objects", i);
    std::string name = as_string(require(objs[i], "name", path), at(path, "name"));
    Index n = objs[i].contains("N") ? as_index(objs[i]["N"], at(path, "N")) : -1;
    if (objs[i].contains("N") && n < 0) throw ValidationError(at(path, "N"), "size must be non-negative");
    Distribution d = parse_distribution(require(objs[i], "distribution", path), at(path, "distribution"), n);
    objects.push_back({std::move(name), std::move(d)});
  }

  std::vector<KernelDecl> kernels;
  const json& ks = as_array(require(j, "kernels", ""), "kernels");
  for (std::size_t k = 0; k < ks.size(); ++k) {
    const std::string path = at("kernels", k);
    KernelDecl d{as_string(require(ks[k], "name", path), at(path, "name")),
                 as_string(require(ks[k], "input", path), at(path, "input")),
                 as_string(require(ks[k], "output", path), at(path, "output")),
                 SignatureFunction::total(0),
                 SumCombiner{}};
    auto input = std::find_if(objects.begin(), objects.end(), [&](const ObjectDecl& o) { return o.name == d.input; });
    if (input == objects.end()) throw ValidationError(at(path, "input"), "unknown object '" + d.input + "'");
    d.sigma = parse_signature(require(ks[k], "signature", path), at(path, "signature"),
                              input->distribution.global_size());
    if (ks[k].contains("combiner")) d.combiner = parse_combiner(ks[k]["combiner"], at(path, "combiner"));
    kernels.push_back(std::move(d));
  }
  return Program(std::move(objects), std::move(kernels));
}

Program parse_program_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError("line " + std::to_string(line) + ", column " + std::to_string(col),
                          std::string("JSON syntax error: ") + e.what());
  }
  return parse_program(j);
}

Program load_program(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError(file, "cannot open program file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_program_text(buf.str());
}

}  // namespace distplan::json_io
