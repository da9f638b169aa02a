#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "distplan/program.hpp"
#include "distplan/simulator.hpp"

namespace distplan::json_io {

using nlohmann::json;

// Artifacts. Index sets are lists of half-open [lo, hi] pairs.
json to_json(const IndexSet& s);
json to_json(const Distribution& d);
json to_json(const MessagePlan& plan);
json to_json(const CommunicationStats& stats);
json to_json(const TaskGraph& g);
json to_json(const TraceEvent& ev);

/// One JSON object per line.
std::string trace_lines(const ExecutionTrace& trace);

// Descriptors. All throw ValidationError addressed at `path`.
IndexSet parse_index_set(const json& j, const std::string& path);
/// `n` is the owning object's size when the descriptor omits "N" (-1: unknown).
Distribution parse_distribution(const json& j, const std::string& path, Index n = -1);
/// `n_in` is the input object's size; a present "n_in" must agree with it.
SignatureFunction parse_signature(const json& j, const std::string& path, Index n_in);
CombinerSpec parse_combiner(const json& j, const std::string& path);

Program parse_program(const json& j);
/// Parses program-file text; syntax errors are reported by line and column.
Program parse_program_text(std::string_view text);
Program load_program(const std::string& file);

}  // namespace distplan::json_io
