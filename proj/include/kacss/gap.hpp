#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kacss/errors.hpp"
#include "kacss/flow.hpp"
#include "kacss/graph.hpp"
#include "kacss/lpacss.hpp"
#include "kacss/rational.hpp"

namespace kacss {

/// Depth and column count of the recursive instance G(d, s, s).
struct GapParams {
  int depth = 1;
  int columns = 3;

  void validate() const {
    if (depth < 1) throw std::invalid_argument("gap: depth must be at least 1");
    if (columns < 1) throw std::invalid_argument("gap: columns must be at least 1");
  }
};

struct GapInstance {
  GapParams params;
  Instance instance;        // k = 1
  std::vector<int> levels;  // level of each arc, 1..depth
  VertexId source = 0;      // s = t
};

inline Integer integer_power(long base, int exponent) {
  Integer p = 1;
  for (int i = 0; i < exponent; ++i) p *= base;
  return p;
}

/// Cost of every arc at `level`: 1 / (2 (r+1) r^(d - level)).
inline Rational level_cost(const GapParams& p, int level) {
  p.validate();
  if (level < 1 || level > p.depth) throw std::out_of_range("level_cost: level outside 1..depth");
  Integer den = 2 * (p.columns + 1) * integer_power(p.columns, p.depth - level);
  return Rational(Integer(1), den);
}

/// Number of arcs at `level`: 2 (r+1) r^(d - level).
inline Integer level_arc_count(const GapParams& p, int level) {
  return 2 * (p.columns + 1) * integer_power(p.columns, p.depth - level);
}

namespace detail {

class GapBuilder {
 public:
  explicit GapBuilder(const GapParams& p) : p_(p) {}

  GapInstance build() {
    GapInstance g;
    g.params = p_;
    g.source = fresh();
    expand(p_.depth, g.source, g.source);
    g.instance.n = next_;
    g.instance.k = 1;
    for (const auto& [arc, level] : arcs_) {
      g.instance.arcs.push_back(arc);
      g.levels.push_back(level);
    }
    return g;
  }

 private:
  VertexId fresh() { return next_++; }

  void add(VertexId tail, VertexId head, int level) { arcs_.push_back({{tail, head, level_cost(p_, level)}, level}); }

  // Vertices of one recursion node are numbered before its children.
  void expand(int d, VertexId s, VertexId t) {
    const int r = p_.columns;
    if (d == 1) {
      std::vector<VertexId> v{s};
      for (int i = 1; i <= r; ++i) v.push_back(fresh());
      v.push_back(t);
      for (int i = 1; i <= r + 1; ++i) {
        add(v[i - 1], v[i], 1);
        add(v[i], v[i - 1], 1);
      }
      return;
    }
    std::vector<VertexId> v(r + 2), u(r + 2);
    // The u-path runs s -> t and the v-path t -> s, so every vertex has
    // equal in- and out-degree. With s = t this is the same graph as taking
    // u_0 = t and u_(r+1) = s; for s != t only this orientation keeps the
    // all-halves vector feasible below the top level.
    v[0] = s;
    v[r + 1] = t;
    u[0] = s;
    u[r + 1] = t;
    for (int i = 1; i <= r; ++i) v[i] = fresh();
    for (int i = 1; i <= r; ++i) u[i] = fresh();
    for (int i = 1; i <= r + 1; ++i) {
      add(u[i - 1], u[i], d);
      add(v[i], v[i - 1], d);
    }
    for (int i = 1; i <= r; ++i) expand(d - 1, u[i], v[i]);
  }

  GapParams p_;
  VertexId next_ = 0;
  std::vector<std::pair<Arc, int>> arcs_;
};

}  // namespace detail

/// Builds G(d, s, s) and checks per-level arc counts and costs.
inline GapInstance build_gap_instance(const GapParams& p) {
  p.validate();
  GapInstance g = detail::GapBuilder(p).build();
  for (int level = 1; level <= p.depth; ++level) {
    Integer count = 0;
    Rational cost = 0;
    for (ArcId a = 0; a < g.levels.size(); ++a) {
      if (g.levels[a] != level) continue;
      ++count;
      cost += g.instance.arcs[a].cost;
    }
    if (count != level_arc_count(p, level) || cost != 1)
      throw InternalError("build_gap_instance: level " + std::to_string(level) + " has wrong arc count or cost");
  }
  if (!is_k_arc_connected(g.instance, 1)) throw InternalError("build_gap_instance: result is not strongly connected");
  return g;
}

struct ExactOptOptions {
  std::optional<Rational> upper_hint;
  std::size_t node_budget = 1'000'000;
};

struct ExactOptResult {
  bool proven = false;             // false when the node budget ran out
  std::optional<Rational> value;   // best known cost
  ArcSet best;                     // arcs of the incumbent
  std::size_t nodes = 0;
};

/// Drops arcs in order of decreasing cost (then decreasing id) while the
/// instance stays k-arc-connected.
inline ArcSet greedy_k_connected(const Instance& inst) {
  std::vector<ArcId> order(inst.arcs.size());
  for (ArcId a = 0; a < order.size(); ++a) order[a] = a;
  std::stable_sort(order.begin(), order.end(), [&](ArcId a, ArcId b) {
    if (inst.arcs[a].cost != inst.arcs[b].cost) return inst.arcs[a].cost > inst.arcs[b].cost;
    return a > b;
  });
  ArcSet kept = ArcSet::all(inst.arcs.size());
  for (ArcId a : order) {
    kept.erase(a);
    if (!is_k_arc_connected(inst, kept, inst.k)) kept.insert(a);
  }
  return kept;
}

/// Minimum-cost k-arc-connected spanning subgraph by depth-first
/// branch-and-bound. Each node solves the cut LP under its fixings, starting
/// from a copy of the parent LP; integral LP optima are feasible subgraphs.
inline ExactOptResult exact_opt(const Instance& inst, const ExactOptOptions& options = {}) {
  ExactOptResult result;
  if (!is_k_arc_connected(inst, inst.k)) {
    std::vector<Rational> ones(inst.arcs.size(), Rational(1));
    auto witness = min_violated_cut(inst, ones, 0, inst.k);
    if (!witness) throw InternalError("exact_opt: connectivity check and separation disagree");
    throw InfeasibleInstance(*witness);
  }
  result.best = greedy_k_connected(inst);
  result.value = result.best.cost(inst);
  Rational cutoff = *result.value;
  if (options.upper_hint && *options.upper_hint < cutoff) cutoff = *options.upper_hint;

  std::vector<Rational> costs;
  for (const Arc& a : inst.arcs) costs.push_back(a.cost);
  CutLp root(
      inst, std::move(costs), inst.k,
      [&inst](const std::vector<Rational>& x) { return min_violated_cut(inst, x, 0, inst.k); },
      degree_sides(inst.n));

  std::vector<CutLp> stack;
  stack.push_back(std::move(root));
  while (!stack.empty()) {
    if (result.nodes >= options.node_budget) return result;
    CutLp node = std::move(stack.back());
    stack.pop_back();
    ++result.nodes;
    // Subtrees that cannot beat the incumbent are cut off at equality. A
    // hint below the incumbent is only an upper bound, so equality survives.
    const bool attained = *result.value == cutoff;
    std::optional<Rational> limit;
    if (attained) limit = cutoff;
    if (node.solve(limit) != CutLp::Outcome::kOptimal) continue;
    if (node.value() > cutoff || (attained && node.value() == cutoff)) continue;

    std::optional<ArcId> branch;
    Rational best_distance;
    const Rational half(1, 2);
    for (ArcId a = 0; a < node.x().size(); ++a) {
      const Rational& v = node.x()[a];
      if (v == 0 || v == 1) continue;
      Rational distance = abs(v - half);
      if (!branch || distance < best_distance) {
        branch = a;
        best_distance = distance;
      }
    }
    if (!branch) {
      ArcSet chosen;
      for (ArcId a = 0; a < node.x().size(); ++a)
        if (node.x()[a] == 1) chosen.insert(a);
      if (!is_k_arc_connected(inst, chosen, inst.k)) throw InternalError("exact_opt: integral LP point is infeasible");
      result.best = std::move(chosen);
      result.value = node.value();
      cutoff = node.value();
      continue;
    }
    // The child fixing the arc to one is explored first.
    CutLp drop = node;
    drop.fix(*branch, 0);
    node.fix(*branch, 1);
    stack.push_back(std::move(drop));
    stack.push_back(std::move(node));
  }
  result.proven = true;
  if (options.upper_hint && *options.upper_hint < *result.value)
    throw std::invalid_argument("exact_opt: upper hint is smaller than the optimum");
  return result;
}

struct GapReport {
  GapParams params;
  Rational lp_value;
  Rational all_halves_cost;
  bool all_halves_feasible = false;
  std::optional<Rational> exact_opt;
  bool exact_proven = false;
  std::size_t exact_nodes = 0;
  std::optional<Rational> ratio;  // exact_opt / lp_value
  Rational opt_lower_bound;       // (3d-1)/4 - 3d/r
  Rational gap_lower_bound;       // 3/2 - 8/d
  std::vector<std::string> warnings;
};

inline Rational opt_lower_bound(const GapParams& p) {
  return Rational(3 * p.depth - 1, 4) - Rational(3 * p.depth, p.columns);
}

inline Rational gap_lower_bound(const GapParams& p) { return Rational(3, 2) - Rational(8, p.depth); }

/// LP value, optional exact optimum and the closed-form bounds for G(d, s, s).
inline GapReport gap_report(const GapInstance& g, bool compute_exact, std::size_t node_budget = 1'000'000) {
  const GapParams& p = g.params;
  GapReport report;
  report.params = p;
  report.opt_lower_bound = opt_lower_bound(p);
  report.gap_lower_bound = gap_lower_bound(p);
  if (p.columns < p.depth)
    report.warnings.push_back("columns < depth: the asymptotic gap bound is stated only for columns >= depth");

  std::vector<Rational> halves(g.instance.arcs.size(), Rational(1, 2));
  report.all_halves_feasible = !min_violated_cut(g.instance, halves, g.source, 1).has_value();
  for (ArcId a = 0; a < halves.size(); ++a) report.all_halves_cost += halves[a] * g.instance.arcs[a].cost;
  if (!report.all_halves_feasible) throw InternalError("gap_report: all-halves vector violates a cut");
  if (report.all_halves_cost != Rational(p.depth, 2)) throw InternalError("gap_report: all-halves cost differs from d/2");

  report.lp_value = solve_lp_acss(g.instance, g.source).value;
  if (report.lp_value > Rational(p.depth, 2)) throw InternalError("gap_report: LP value exceeds d/2");

  if (compute_exact) {
    ExactOptResult exact = exact_opt(g.instance, {std::nullopt, node_budget});
    report.exact_opt = exact.value;
    report.exact_proven = exact.proven;
    report.exact_nodes = exact.nodes;
    if (!exact.proven) report.warnings.push_back("node budget exhausted: exact_opt is an upper bound only");
    if (exact.value && report.lp_value > 0) report.ratio = *exact.value / report.lp_value;
    if (exact.proven) {
      if (*exact.value < report.lp_value) throw InternalError("gap_report: integral optimum below LP value");
      if (*exact.value < report.opt_lower_bound) throw InternalError("gap_report: optimum below the depth bound");
    }
  }
  return report;
}

inline GapReport gap_report(const GapParams& p, bool compute_exact, std::size_t node_budget = 1'000'000) {
  return gap_report(build_gap_instance(p), compute_exact, node_budget);
}

}  // namespace kacss
