#include "distplan/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "distplan/json_io.hpp"

namespace distplan::cli {

namespace {

using json_io::json;

constexpr const char* kSchemaHelp = R"(Program file (JSON):
  {"objects": [{"name": "x", "N": 12, "distribution": D}, ...],
   "kernels": [{"name": "k", "input": "x", "output": "y",
                "signature": S, "combiner": C}, ...]}
  Kernel 0 reads a program input; kernel k reads the output of kernel k-1.
Distribution D:
  {"kind": "block"|"cyclic"|"replicated", "P": 4}
  {"kind": "explicit", "sets": [[[lo, hi], ...], ...]}     (hi exclusive)
Signature S (optional "n_in" must equal the input size):
  {"kind": "stencil", "offsets": [-1, 0, 1]}
  {"kind": "affine", "stride": 2, "offsets": [0, 1]}
  {"kind": "sparse", "rows": {"0": [[0, 2]], ...}}  or  {"kind": "sparse", "matrix": [[0, 1], ...]}
  {"kind": "total"}
Combiner C (default sum):
  {"kind": "sum"} | {"kind": "max"} | {"kind": "weighted", "weights": {"-1": -1, "0": 2, "1": -1}}
Values file: whitespace-separated integers, one per input index.
Exit codes: 0 success, 1 validation error, 2 uncoverable kernel,
            3 simulation mismatch, 4 check-local found a non-local kernel.)";

std::vector<Value> read_values(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError(file, "cannot open values file");
  std::vector<Value> values;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    Value v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) {
      throw ValidationError(file + ": value " + std::to_string(values.size()), "not an integer: '" + tok + "'");
    }
    values.push_back(v);
  }
  return values;
}

void print_stats_table(std::ostream& os, const std::vector<MessagePlan>& plans) {
  os << std::left << std::setw(16) << "kernel" << std::right << std::setw(12) << "cross_msgs"
     << std::setw(14) << "cross_volume" << std::setw(12) << "local_msgs" << std::setw(10)
     << "max_halo" << '\n';
  for (const auto& plan : plans) {
    CommunicationStats s = communication_stats(plan);
    os << std::left << std::setw(16) << plan.kernel << std::right << std::setw(12)
       << s.cross_messages << std::setw(14) << s.cross_volume << std::setw(12) << s.local_messages
       << std::setw(10) << s.max_halo << '\n';
  }
}

int cmd_beta(const Program& prog, std::ostream& out) {
  json kernels = json::array();
  for (const Kernel& k : prog.kernels()) {
    kernels.push_back({{"kernel", k.name()}, {"beta", json_io::to_json(derive_beta(k))}});
  }
  out << json{{"kernels", std::move(kernels)}}.dump(2) << '\n';
  return kSuccess;
}

int cmd_messages(const Program& prog, SenderPolicy policy, std::ostream& out, std::ostream& err) {
  std::vector<MessagePlan> plans;
  json docs = json::array();
  for (const Kernel& k : prog.kernels()) {
    plans.push_back(message_plan(k, policy));
    json doc = json_io::to_json(plans.back());
    doc["stats"] = json_io::to_json(communication_stats(plans.back()));
    docs.push_back(std::move(doc));
  }
  out << json{{"plans", std::move(docs)}}.dump(2) << '\n';
  print_stats_table(err, plans);
  return kSuccess;
}

int cmd_dag(const Program& prog, const std::string& format, std::ostream& out) {
  TaskGraph g = build_task_graph(prog);
  if (format == "dot") {
    out << to_dot(g);
  } else {
    out << json_io::to_json(g).dump(2) << '\n';
  }
  return kSuccess;
}

int cmd_check_local(const Program& prog, std::ostream& out) {
  bool all = true;
  for (const Kernel& k : prog.kernels()) {
    const bool local = is_local(k);
    all = all && local;
    out << k.name() << ": " << (local ? "local" : "non-local") << '\n';
  }
  return all ? kSuccess : kNotLocal;
}

int cmd_simulate(const Program& prog, const std::string& input_file, SenderPolicy policy,
                 const std::string& trace_file, std::ostream& out) {
  std::vector<Value> input;
  if (input_file.empty()) {
    input.resize(static_cast<std::size_t>(prog.input_object().distribution.global_size()));
    for (std::size_t i = 0; i < input.size(); ++i) input[i] = static_cast<Value>(i);
  } else {
    input = read_values(input_file);
  }
  VerifyReport report = verify(prog, input, policy);
  if (!trace_file.empty()) {
    std::ofstream t(trace_file);
    if (!t) throw ValidationError(trace_file, "cannot write trace file");
    t << json_io::trace_lines(report.trace);
  }
  for (std::size_t i = 0; i < report.distributed.size(); ++i) {
    out << (i ? " " : "") << report.distributed[i];
  }
  out << '\n';
  std::size_t msgs = 0, volume = 0;
  for (const auto& s : report.stats) {
    msgs += s.cross_messages;
    volume += s.cross_volume;
  }
  if (report.ok()) {
    out << "verdict: match (policy " << policy_name(policy) << ", " << msgs
        << " cross messages, volume " << volume << ")\n";
    return kSuccess;
  }
  out << "verdict: MISMATCH";
  if (report.first_difference) out << " at index " << *report.first_difference;
  if (!report.replicas_agree) out << " (replicated copies disagree)";
  out << '\n';
  return kSimulationMismatch;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Derive halo sets, message plans and task graphs for data-parallel kernels", "distplan"};
  app.footer(kSchemaHelp);
  app.require_subcommand(1);

  std::string file, policy_arg = "lowest-owner", format = "dot", input_file, trace_file;

  auto* beta = app.add_subcommand("beta", "Print the derived input-need distribution of every kernel");
  auto* messages = app.add_subcommand("messages", "Print the message plan of every kernel (stats table on stderr)");
  auto* dag = app.add_subcommand("dag", "Print the layered task graph");
  auto* check = app.add_subcommand("check-local", "Report whether every kernel runs without communication");
  auto* simulate = app.add_subcommand("simulate", "Run sequentially and distributed, compare results");
  for (auto* sub : {beta, messages, dag, check, simulate}) {
    sub->add_option("file", file, "Program file (JSON)")->required();
  }
  for (auto* sub : {messages, simulate}) {
    sub->add_option("--policy", policy_arg, "Sender policy")
        ->check(CLI::IsMember({"all-owners", "lowest-owner"}))
        ->capture_default_str();
  }
  dag->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"dot", "json"}))
      ->capture_default_str();
  simulate->add_option("--input", input_file, "Values file; default is the ramp 0..N-1");
  simulate->add_option("--trace", trace_file, "Write the execution trace as JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  try {
    Program prog = json_io::load_program(file);
    const SenderPolicy policy = parse_policy(policy_arg);
    if (*beta) return cmd_beta(prog, out);
    if (*messages) return cmd_messages(prog, policy, out, err);
    if (*dag) return cmd_dag(prog, format, out);
    if (*check) return cmd_check_local(prog, out);
    return cmd_simulate(prog, input_file, policy, trace_file, out);
  } catch (const UncoverableError& e) {
    err << "error: " << e.what() << '\n';
    return kUncoverable;
  } catch (const SimulationError& e) {
    err << "error: " << e.what() << '\n';
    return kSimulationMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
}

}  // namespace distplan::cli
