#pragma once

// Command-line front end. Needs CLI11.hpp and json.hpp on the include path.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "kacss/arborescence.hpp"
#include "kacss/dot.hpp"
#include "kacss/errors.hpp"
#include "kacss/flow.hpp"
#include "kacss/gap.hpp"
#include "kacss/graph.hpp"
#include "kacss/json.hpp"
#include "kacss/lpacss.hpp"
#include "kacss/rounding.hpp"

namespace kacss::cli {

enum ExitCode : int { kOk = 0, kNotConnected = 1, kUsage = 2, kInternal = 3 };

/// Bad arguments or unreadable input files.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

inline ArcSet read_arc_set(const std::string& path, std::size_t num_arcs) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open arc-set file '" + path + "'");
  return parse_arc_set(in, num_arcs);
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  return out;
}

inline void print_arcs(std::ostream& out, const ArcSet& arcs) {
  bool first = true;
  for (ArcId a : arcs) {
    out << (first ? "" : " ") << a;
    first = false;
  }
  out << '\n';
}

struct SolveArgs {
  std::string instance;
  VertexId root = 0;
  std::uint64_t seed = 0;
  bool derandomize = false;
  bool json = false;
  std::string dot;
  std::string arcs;
  std::string transcript;
};

inline int run_solve(const SolveArgs& a, std::ostream& out) {
  Instance inst = read_instance(a.instance);
  if (inst.n > 0 && a.root >= inst.n) throw UsageError("--root must be below the vertex count");
  const RoundingMode mode = a.derandomize ? RoundingMode::kDerandomized : RoundingMode::kSampled;
  PipelineResult r = solve_pipeline(inst, a.root, mode, a.seed);
  RatioChain chain = ratio_chain(r.lp, r.comb_in, r.comb_out);

  if (!a.arcs.empty()) {
    std::ofstream f = open_output(a.arcs);
    write_arc_set(f, r.report.output);
  }
  if (!a.dot.empty()) {
    std::ofstream f = open_output(a.dot);
    export_dot(f, inst, r.report.output);
  }
  if (!a.transcript.empty()) {
    std::ofstream f = open_output(a.transcript);
    f << transcript_json(r.lp).dump(2) << '\n';
  }

  if (a.json) {
    Json j = rounding_json(r.report);
    j["instance"] = {{"n", inst.n}, {"m", inst.arcs.size()}, {"k", inst.k}};
    j["lp"] = {{"value", to_json(r.lp.value)},
               {"cuts", r.lp.cuts.size()},
               {"iterations", r.lp.trajectory.size()}};
    j["chain"] = ratio_chain_json(chain);
    j["decomposition"] = {{"in_terms", r.comb_in.terms.size()}, {"out_terms", r.comb_out.terms.size()}};
    out << j.dump(2) << '\n';
    return kOk;
  }
  const RoundingReport& rep = r.report;
  out << "instance: n=" << inst.n << " m=" << inst.arcs.size() << " k=" << inst.k << '\n';
  out << "lp value: " << to_string(r.lp.value) << " (x(A) = " << to_string(chain.x_total)
      << ", fractional arcs: " << chain.fractional << ", cuts: " << r.lp.cuts.size() << ")\n";
  out << "terms: in " << r.comb_in.terms.size() << ", out " << r.comb_out.terms.size() << '\n';
  out << "mode: " << to_string(rep.mode);
  if (rep.seed) out << " (seed " << *rep.seed << ")";
  out << '\n';
  out << (rep.unit_costs ? "size: " : "cost: ") << to_string(rep.size) << '\n';
  out << "expected: " << to_string(rep.expected) << '\n';
  out << "ratio: " << (rep.ratio ? to_string(*rep.ratio) : std::string("undefined"));
  if (rep.unit_costs) out << " (bound " << to_string(rep.bound) << ")";
  else out << " (no guarantee for weighted instances)";
  out << '\n';
  out << "arcs: ";
  print_arcs(out, rep.output);
  return kOk;
}

inline int run_verify(const std::string& instance_path, const std::string& subgraph, std::optional<int> k,
                      std::ostream& out) {
  Instance inst = read_instance(instance_path);
  ArcSet arcs = subgraph.empty() ? ArcSet::all(inst.arcs.size()) : read_arc_set(subgraph, inst.arcs.size());
  const int need = k.value_or(inst.k);
  if (need < 1) throw UsageError("--k must be positive");
  if (is_k_arc_connected(inst, arcs, need)) {
    out << "k-arc-connected: yes (k=" << need << ", " << arcs.size() << " arcs)\n";
    return kOk;
  }
  std::vector<Rational> cap(inst.arcs.size());
  for (ArcId a : arcs) cap[a] = 1;
  auto witness = min_violated_cut(inst, cap, 0, need);
  out << "k-arc-connected: no (k=" << need << ", " << arcs.size() << " arcs)\n";
  if (witness) {
    out << "witness: U = {";
    for (std::size_t i = 0; i < witness->side.size(); ++i) out << (i ? ", " : "") << witness->side[i];
    out << "} has " << to_string(witness->value) << " leaving arcs\n";
  }
  return kNotConnected;
}

inline int run_decompose(const std::string& instance_path, const std::string& direction, VertexId root,
                         std::ostream& out) {
  Instance inst = read_instance(instance_path);
  if (inst.n > 0 && root >= inst.n) throw UsageError("--root must be below the vertex count");
  FractionalSolution sol = solve_lp_acss(inst, root);
  ConvexCombination comb = decompose(inst, sol, direction == "in" ? Direction::kIn : Direction::kOut);
  out << decomposition_json(comb).dump(2) << '\n';
  return kOk;
}

struct GapArgs {
  int depth = 1;
  int columns = 3;
  bool exact = false;
  bool json = false;
  std::string emit;
  std::size_t node_budget = 1'000'000;
};

inline int run_gap(const GapArgs& a, std::ostream& out) {
  GapParams p{a.depth, a.columns};
  p.validate();
  GapInstance g = build_gap_instance(p);
  if (!a.emit.empty()) {
    std::ofstream f = open_output(a.emit + ".kacss");
    f << "# G(" << p.depth << ",s,s) with " << p.columns << " columns; source " << g.source << '\n';
    write_instance(f, g.instance);
    std::ofstream levels = open_output(a.emit + ".levels.json");
    levels << gap_levels_json(g).dump(2) << '\n';
  }
  GapReport r = gap_report(g, a.exact, a.node_budget);
  if (a.json) {
    out << gap_json(r).dump(2) << '\n';
    return kOk;
  }
  out << "G(" << p.depth << ",s,s), columns " << p.columns << ": " << g.instance.n << " vertices, "
      << g.instance.arcs.size() << " arcs\n";
  out << "all-halves: " << (r.all_halves_feasible ? "feasible" : "infeasible") << ", cost "
      << to_string(r.all_halves_cost) << '\n';
  out << "lp value: " << to_string(r.lp_value) << '\n';
  if (r.exact_opt) {
    out << "exact opt: " << to_string(*r.exact_opt) << (r.exact_proven ? "" : " (upper bound, budget exhausted)")
        << " after " << r.exact_nodes << " nodes\n";
    if (r.ratio) out << "ratio: " << to_string(*r.ratio) << '\n';
  }
  out << "opt lower bound (3d-1)/4 - 3d/r: " << to_string(r.opt_lower_bound) << '\n';
  out << "gap lower bound 3/2 - 8/d: " << to_string(r.gap_lower_bound) << '\n';
  for (const std::string& w : r.warnings) out << "warning: " << w << '\n';
  return kOk;
}

inline int run_random(std::size_t n, int k, std::size_t extra, std::uint64_t seed, const std::string& output,
                      std::ostream& out) {
  Instance inst;
  try {
    inst = random_k_connected(n, k, extra, seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  if (output.empty()) {
    write_instance(out, inst);
  } else {
    std::ofstream f = open_output(output);
    write_instance(f, inst);
  }
  return kOk;
}

}  // namespace detail

/// Runs one command line. Reports go to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate minimum-size k-arc-connected spanning subgraphs by LP rounding"};
  app.name("kacss");
  app.require_subcommand(1);

  detail::SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve the LP, decompose it and return a rounded subgraph");
  solve->add_option("instance", solve_args.instance, "Instance file")->required();
  solve->add_option("--root", solve_args.root, "Root vertex for separation and decomposition");
  solve->add_option("--seed", solve_args.seed, "Seed for sampling (default 0)");
  solve->add_flag("--derandomize", solve_args.derandomize, "Pick the pair with the smallest union");
  solve->add_flag("--json", solve_args.json, "Print the report as JSON");
  solve->add_option("--dot", solve_args.dot, "Write a Graphviz file with the output highlighted");
  solve->add_option("--arcs", solve_args.arcs, "Write the output arc set");
  solve->add_option("--transcript", solve_args.transcript, "Write the cutting-plane transcript as JSON");

  std::string verify_instance, verify_subgraph;
  std::optional<int> verify_k;
  CLI::App* verify = app.add_subcommand("verify", "Check k-arc-connectivity of an instance or a subgraph");
  verify->add_option("instance", verify_instance, "Instance file")->required();
  verify->add_option("--subgraph", verify_subgraph, "Arc-set file (default: all arcs)");
  verify->add_option("--k", verify_k, "Connectivity to check (default: the instance's k)");

  std::string decompose_instance, direction = "out";
  VertexId decompose_root = 0;
  CLI::App* decompose_cmd = app.add_subcommand("decompose", "Write the LP optimum as a convex combination");
  decompose_cmd->add_option("instance", decompose_instance, "Instance file")->required();
  decompose_cmd->add_option("--direction", direction, "in or out")->check(CLI::IsMember({"in", "out"}));
  decompose_cmd->add_option("--root", decompose_root, "Root vertex");

  detail::GapArgs gap_args;
  CLI::App* gap = app.add_subcommand("gap", "Build and evaluate the recursive gap instance");
  gap->add_option("--depth", gap_args.depth, "Recursion depth d >= 1")->check(CLI::PositiveNumber);
  gap->add_option("--columns", gap_args.columns, "Columns r >= 1")->check(CLI::PositiveNumber);
  gap->add_flag("--exact", gap_args.exact, "Compute the integral optimum by branch and bound");
  gap->add_flag("--json", gap_args.json, "Print the report as JSON");
  gap->add_option("--emit", gap_args.emit, "Write PREFIX.kacss and PREFIX.levels.json");
  gap->add_option("--node-budget", gap_args.node_budget, "Branch-and-bound node limit");

  std::size_t random_n = 0, random_extra = 0;
  int random_k = 1;
  std::uint64_t random_seed = 0;
  std::string random_output;
  CLI::App* random = app.add_subcommand("random", "Generate a random k-arc-connected instance");
  random->add_option("--n", random_n, "Vertex count")->required();
  random->add_option("--k", random_k, "Connectivity requirement");
  random->add_option("--extra", random_extra, "Extra arcs beyond the k Hamiltonian cycles");
  random->add_option("--seed", random_seed, "Seed (default 0)");
  random->add_option("--output", random_output, "Write to a file instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return detail::run_solve(solve_args, out);
    if (*verify) return detail::run_verify(verify_instance, verify_subgraph, verify_k, out);
    if (*decompose_cmd) return detail::run_decompose(decompose_instance, direction, decompose_root, out);
    if (*gap) return detail::run_gap(gap_args, out);
    if (*random) return detail::run_random(random_n, random_k, random_extra, random_seed, random_output, out);
  } catch (const InfeasibleInstance& e) {
    err << "error: " << e.what() << '\n';
    return kNotConnected;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace kacss::cli
