// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "distplan/json_io.hpp"
#include "distplan/simulator.hpp"
#include "support/oracle.hpp"
#include "support/random_cases.hpp"

using namespace distplan;
namespace t = distplan::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fixture(const std::string& name) { return std::string(DISTPLAN_FIXTURE_DIR) + "/" + name; }

std::vector<int> ranks(const std::vector<ProcId>& ps) {
  std::vector<int> out;
  for (auto p : ps) out.push_back(p.rank);
  return out;
}

constexpr int kKernelCases = 1200;
constexpr int kProgramCases = 600;
constexpr int kSetPairs = 2000;
constexpr double kBetaSuiteSeconds = 30.0;

// Suite of kernels shared by criteria 1-3, generated so that every signature
// variant and every distribution constructor appears.
std::vector<Kernel> kernel_suite() {
  t::Rng rng(20240601);
  std::vector<Kernel> out;
  out.reserve(kKernelCases);
  for (int c = 0; c < kKernelCases; ++c) {
    const int procs = static_cast<int>(t::uniform(rng, 1, 8));
    const Index n_in = t::uniform(rng, 1, 300);
    const auto sig_kind = static_cast<t::SigKind>(c % 4);
    const auto alpha_kind = static_cast<t::DistKind>((c / 4) % 4);
    const auto gamma_kind = static_cast<t::DistKind>((c / 16) % 4);
    auto sig = t::random_signature(rng, sig_kind, n_in, 300);
    auto alpha = t::random_distribution(rng, n_in, procs, true, alpha_kind);
    auto gamma = t::random_distribution(rng, sig.n_out, procs, true, gamma_kind);
    auto comb = t::random_combiner(rng, sig.sigma);
    out.emplace_back("case" + std::to_string(c), std::move(alpha), std::move(gamma), std::move(sig.sigma),
                     std::move(comb));
  }
  return out;
}

Outcome beta_equivalence(const std::vector<Kernel>& suite) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  for (const auto& k : suite) {
    const auto beta = derive_beta(k);
    const auto want = oracle::beta(k);
    for (int p = 0; p < k.nprocs(); ++p) {
      if (oracle::to_set(beta.lookup({p})) != want[p]) o.fail(k.name() + " differs at p=" + std::to_string(p));
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= kBetaSuiteSeconds) o.fail("runtime " + std::to_string(secs) + " s");
  if (o.pass) o.detail = std::to_string(suite.size()) + " kernels, " + std::to_string(secs) + " s";
  return o;
}

Outcome predecessor_sets(const std::vector<Kernel>& suite) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& k : suite) {
    const auto beta = derive_beta(k);
    const auto brute = oracle::beta(k);
    for (int p = 0; p < k.nprocs(); ++p, ++checked) {
      if (ranks(predecessors(k, beta, {p})) != oracle::predecessors(k, brute, p)) {
        o.fail(k.name() + " p=" + std::to_string(p));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " (kernel, p) pairs";
  return o;
}

Outcome locality(const std::vector<Kernel>& suite) {
  Outcome o;
  std::size_t local = 0;
  for (const auto& k : suite) {
    const bool predicate = is_local(k);
    const auto beta = oracle::beta(k);
    bool halo_free = true;
    for (int p = 0; p < k.nprocs(); ++p) {
      halo_free = halo_free && oracle::set_difference(beta[p], oracle::to_set(k.alpha().sets()[p])).empty();
    }
    const bool silent = communication_stats(message_plan(k, SenderPolicy::LowestOwner)).cross_messages == 0;
    if (predicate != halo_free || halo_free != silent) o.fail(k.name() + " disagrees");
    local += predicate;
  }
  if (o.pass) o.detail = std::to_string(local) + " local / " + std::to_string(suite.size() - local) + " non-local";
  return o;
}

Outcome simulation() {
  Outcome o;
  std::size_t runs = 0;
  auto check = [&](const Program& prog, const std::vector<Value>& x, const std::string& label) {
    const auto seq = run_sequential(prog, x);
    for (auto policy : {SenderPolicy::AllOwners, SenderPolicy::LowestOwner}) {
      auto r = run_distributed(prog, x, policy);
      ++runs;
      if (r.output != seq) o.fail(label + " mismatch under " + policy_name(policy));
      if (!r.replica_mismatches.empty()) o.fail(label + " replica disagreement");
    }
  };

  check(json_io::load_program(fixture("heat12.json")), {0, 1, 4, 9, 16, 25, 36, 49, 64, 81, 100, 121}, "heat12");
  const auto heat_out = run_sequential(json_io::load_program(fixture("heat12.json")), std::vector<Value>{0, 1, 4, 9, 16, 25, 36, 49, 64, 81, 100, 121});
  // 2x_i - x_{i-1} - x_{i+1} on squares is -2 inside; boundary stencils are clipped.
  std::vector<Value> expect(12, -2);
  expect.front() = -1;
  expect.back() = 142;
  if (heat_out != expect) o.fail("heat12 sequential values");
  check(json_io::load_program(fixture("restrict.json")), {1, 2, 3, 4, 5, 6, 7, 8}, "restrict");
  check(json_io::load_program(fixture("allreduce.json")), {1, -2, 3, -4, 5, -6, 7, -8}, "allreduce");
  check(json_io::load_program(fixture("multigrid.json")), std::vector<Value>(16, 3), "multigrid");

  t::Rng rng(31337);
  const int procs_choices[] = {1, 2, 3, 4, 7};
  for (int c = 0; c < kProgramCases; ++c) {
    Program prog = t::random_program(rng, 200, procs_choices[c % 5]);
    check(prog, t::random_values(rng, prog.input_object().distribution.global_size()),
          "program " + std::to_string(c));
  }
  if (o.pass) o.detail = std::to_string(runs) + " distributed runs, 0 mismatches";
  return o;
}

Outcome interval_identity() {
  Outcome o;
  std::size_t blocks = 0;
  for (Index n = 0; n <= 100; ++n) {
    auto sigma = SignatureFunction::stencil({-1, 0, 1}, n);
    for (int procs = 1; procs <= 10; ++procs) {
      const auto dist = Distribution::block(n, procs);
      for (const auto& block : dist.sets()) {
        ++blocks;
        IndexSet want;
        if (!block.empty()) {
          Index lo = block.intervals().front().lo, hi = block.intervals().front().hi;
          want = IndexSet::range(std::max<Index>(lo - 1, 0), std::min(hi + 1, n));
        }
        if (sigma.apply_set(block) != want) o.fail("N=" + std::to_string(n) + " P=" + std::to_string(procs));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(blocks) + " blocks";
  return o;
}

Outcome dag_structure() {
  Outcome o;
  auto heat = json_io::load_program(fixture("heat12.json"));
  auto g = build_task_graph(heat);
  std::multiset<std::pair<int, int>> cross, want;
  for (const auto& e : g.edges) {
    if (e.from.proc != e.to.proc) cross.insert({e.from.proc.rank, e.to.proc.rank});
  }
  for (int p = 0; p < 4; ++p) {
    for (int q : oracle::predecessors(heat.kernels()[0], p)) {
      if (q != p) want.insert({q, p});
    }
  }
  if (cross != want) o.fail("heat12 cross edges differ from brute force");
  if (g.edges.size() != 10) o.fail("heat12 has " + std::to_string(g.edges.size()) + " edges");

  auto ar = build_task_graph(json_io::load_program(fixture("allreduce.json")));
  const auto procs = ar.layers[0].size();
  for (const auto& task : ar.layers[1]) {
    if (ar.in_edges(task).size() != procs) o.fail("allreduce in-degree of " + task.id());
  }

  auto rs = build_task_graph(json_io::load_program(fixture("restrict.json")));
  for (const auto& e : rs.edges) {
    if (e.from.proc != e.to.proc) o.fail("restriction has a cross edge");
  }

  if (to_dot(build_task_graph(heat)) != to_dot(build_task_graph(json_io::load_program(fixture("heat12.json"))))) {
    o.fail("DOT output not byte-stable");
  }
  if (o.pass) o.detail = std::to_string(cross.size()) + " heat12 cross edges, allreduce in-degree " + std::to_string(procs);
  return o;
}

Outcome set_algebra() {
  Outcome o;
  t::Rng rng(99991);
  for (int c = 0; c < kSetPairs; ++c) {
    const Index bound = t::uniform(rng, 1, 200);
    auto a = t::random_index_set(rng, bound);
    auto b = t::random_index_set(rng, bound);
    auto ea = oracle::to_set(a), eb = oracle::to_set(b);
    const IndexSet results[] = {unite(a, b), intersect(a, b), difference(a, b)};
    if (oracle::to_set(results[0]) != oracle::set_union(ea, eb)) o.fail("union, case " + std::to_string(c));
    if (oracle::to_set(results[1]) != oracle::set_intersection(ea, eb)) o.fail("intersect, case " + std::to_string(c));
    if (oracle::to_set(results[2]) != oracle::set_difference(ea, eb)) o.fail("difference, case " + std::to_string(c));
    if (is_superset(a, b) != oracle::set_contains_all(ea, eb)) o.fail("superset, case " + std::to_string(c));
    for (const auto& r : results) {
      if (!IndexSet::is_canonical(r.intervals())) o.fail("non-canonical result, case " + std::to_string(c));
    }
  }
  if (o.pass) o.detail = std::to_string(kSetPairs) + " pairs";
  return o;
}

}  // namespace

int main() {
  const auto suite = kernel_suite();
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 beta-oracle equivalence", [&] { return beta_equivalence(suite); }},
      {"2 predecessor sets", [&] { return predecessor_sets(suite); }},
      {"3 locality three-way agreement", [&] { return locality(suite); }},
      {"4 end-to-end simulation", simulation},
      {"5 three-point interval identity", interval_identity},
      {"6 task graph structure", dag_structure},
      {"7 index-set algebra", set_algebra},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
