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
#include "kacss/simplex.hpp"

namespace kacss {

enum class Direction { kOut, kIn };

inline const char* to_string(Direction d) { return d == Direction::kOut ? "out" : "in"; }

/// An arc set containing k arc-disjoint arborescences with a common root,
/// all pointing away from it (out) or towards it (in).
struct ArborescenceSet {
  ArcSet arcs;
  VertexId root = 0;
  int k = 1;
  Direction direction = Direction::kOut;

  friend bool operator==(const ArborescenceSet&, const ArborescenceSet&) = default;
};

struct WeightedTerm {
  Rational weight;
  ArborescenceSet term;
};

/// Probability distribution over k-arborescences.
struct ConvexCombination {
  std::vector<WeightedTerm> terms;
  VertexId root = 0;
  int k = 1;
  Direction direction = Direction::kOut;

  // Column-generation bookkeeping.
  Rational master_value;
  std::size_t pricing_rounds = 0;

  /// Probability that each arc lies in a sampled term.
  std::vector<Rational> marginals(std::size_t num_arcs) const {
    std::vector<Rational> m(num_arcs);
    for (const WeightedTerm& t : terms)
      for (ArcId a : t.term.arcs) m[a] += t.weight;
    return m;
  }

  Rational total_weight() const {
    Rational s = 0;
    for (const WeightedTerm& t : terms) s += t.weight;
    return s;
  }
};

/// True iff `arcs` contains k arc-disjoint root-out (root-in) arborescences,
/// i.e. k arc-disjoint paths from the root to every vertex (or back).
inline bool is_k_arborescence(const Instance& inst, const ArcSet& arcs, VertexId root, int k, Direction direction) {
  if (root >= inst.n) return false;
  std::vector<bool> in_set = arcs.mask(inst.arcs.size());
  for (VertexId v = 0; v < inst.n; ++v) {
    if (v == root) continue;
    long flow = direction == Direction::kOut ? detail::unit_flow(inst, in_set, root, v, k)
                                             : detail::unit_flow(inst, in_set, v, root, k);
    if (flow < k) return false;
  }
  return true;
}

/// Drops arcs in descending id order whenever the rest still contains a
/// k-arborescence. The result is inclusion-minimal.
inline ArcSet prune_to_minimal(const Instance& inst, ArcSet arcs, VertexId root, int k, Direction direction) {
  if (!is_k_arborescence(inst, arcs, root, k, direction))
    throw std::invalid_argument("prune_to_minimal: input does not contain a k-arborescence");
  std::vector<ArcId> order(arcs.ids().rbegin(), arcs.ids().rend());
  for (ArcId a : order) {
    arcs.erase(a);
    if (!is_k_arborescence(inst, arcs, root, k, direction)) arcs.insert(a);
  }
  return arcs;
}

/// Minimum-weight k-arborescences for one root and direction under changing
/// weights. Keeps a cutting-plane LP over P^out ∩ [0,1]^A alive between calls
/// so cuts found for one weight vector are reused for the next. In-direction
/// queries run on the reversed graph, which has the same arc ids.
class ArborescenceOracle {
 public:
  ArborescenceOracle(const Instance& inst, VertexId root, int k, Direction direction)
      : inst_(inst), work_(direction == Direction::kOut ? inst : inst.reversed()), root_(root), k_(k),
        direction_(direction),
        lp_(work_, std::vector<Rational>(inst.arcs.size()), k,
            [this](const std::vector<Rational>& y) {
              return min_violated_cut(work_, y, root_, k_, CutFamily::kRootLeaving);
            },
            root_in_degree_sides(inst.n, root)) {
    if (root >= inst.n) throw std::invalid_argument("ArborescenceOracle: root out of range");
    if (k < 1) throw std::invalid_argument("ArborescenceOracle: k must be positive");
    if (!is_k_arborescence(inst, ArcSet::all(inst.arcs.size()), root, k, direction))
      throw std::invalid_argument("ArborescenceOracle: the graph contains no " + std::string(to_string(direction)) +
                                  " " + std::to_string(k) + "-arborescence rooted at " + std::to_string(root));
  }

  ArborescenceOracle(const ArborescenceOracle&) = delete;
  ArborescenceOracle& operator=(const ArborescenceOracle&) = delete;

  /// Minimum of w(T) over arc sets T containing a k-arborescence, pruned to
  /// an inclusion-minimal set (weights are nonnegative, so pruning keeps it
  /// minimum).
  ArborescenceSet minimize(const std::vector<Rational>& w) {
    if (w.size() != inst_.arcs.size()) throw std::invalid_argument("min_weight_k_arborescence: weight length mismatch");
    for (const Rational& v : w)
      if (v < 0) throw std::invalid_argument("min_weight_k_arborescence: negative weight");
    lp_.set_objective(w);
    if (lp_.solve() != CutLp::Outcome::kOptimal)
      throw InternalError("min_weight_k_arborescence: LP over P^out infeasible on a feasible graph");
    ++vertices_checked_;
    ArcSet chosen;
    for (ArcId a = 0; a < lp_.x().size(); ++a) {
      const Rational& y = lp_.x()[a];
      if (y != 0 && y != 1)
        throw InternalError("min_weight_k_arborescence: fractional vertex of P^out (arc " + std::to_string(a) +
                            " = " + to_string(y) + ")");
      if (y == 1) chosen.insert(a);
    }
    ArborescenceSet out;
    out.arcs = prune_to_minimal(inst_, std::move(chosen), root_, k_, direction_);
    out.root = root_;
    out.k = k_;
    out.direction = direction_;
    return out;
  }

  /// Number of LP vertices verified integral so far.
  std::size_t vertices_checked() const { return vertices_checked_; }

 private:
  const Instance& inst_;
  Instance work_;
  VertexId root_;
  int k_;
  Direction direction_;
  CutLp lp_;
  std::size_t vertices_checked_ = 0;
};

inline ArborescenceSet min_weight_k_arborescence(const Instance& inst, const std::vector<Rational>& w, VertexId root,
                                                 int k, Direction direction) {
  ArborescenceOracle oracle(inst, root, k, direction);
  return oracle.minimize(w);
}

/// Writes x as a convex combination of k-arborescences whose marginals stay
/// below x, by column generation: the master maximizes the total weight of
/// generated terms subject to per-arc marginal caps x_a, and the pricing step
/// asks for a k-arborescence of dual weight below one. Arcs with x_a = 0
/// cannot carry weight, so both problems live on the support of x.
inline ConvexCombination decompose(const Instance& inst, const std::vector<Rational>& x, VertexId root, int k,
                                   Direction direction) {
  const std::size_t m = inst.arcs.size();
  if (x.size() != m) throw std::invalid_argument("decompose: x length mismatch");
  for (const Rational& v : x)
    if (v < 0 || v > 1) throw std::invalid_argument("decompose: x outside [0, 1]");
  if (root >= inst.n) throw std::invalid_argument("decompose: root out of range");

  ConvexCombination comb;
  comb.root = root;
  comb.k = k;
  comb.direction = direction;
  if (inst.n <= 1) {
    ArborescenceSet empty{ArcSet{}, root, k, direction};
    comb.terms.push_back({Rational(1), empty});
    comb.master_value = 1;
    return comb;
  }

  std::vector<ArcId> support;
  Instance sub{inst.n, {}, k};
  for (ArcId a = 0; a < m; ++a)
    if (x[a] > 0) {
      support.push_back(a);
      sub.arcs.push_back(inst.arcs[a]);
    }
  if (!is_k_arborescence(sub, ArcSet::all(sub.arcs.size()), root, k, direction))
    throw InternalError("decompose: support of x contains no k-arborescence; x is not in the arborescence polytope");

  ArborescenceOracle oracle(sub, root, k, direction);
  lp::LinearProgram master;
  master.sense = lp::Sense::kMaximize;
  for (ArcId a : support) master.add_row({}, lp::Relation::kLessEqual, x[a]);
  lp::Simplex simplex(std::move(master));
  std::vector<ArborescenceSet> columns;  // in support indices

  for (;;) {
    if (simplex.optimize() != lp::Status::kOptimal) throw InternalError("decompose: master LP not optimal");
    const std::vector<Rational> w = simplex.solution().duals;
    ArborescenceSet best = oracle.minimize(w);
    ++comb.pricing_rounds;
    Rational weight = 0;
    for (ArcId a : best.arcs) weight += w[a];
    if (weight >= 1) break;
    if (std::find(columns.begin(), columns.end(), best) != columns.end())
      throw InternalError("decompose: pricing returned an existing column with negative reduced cost");
    std::vector<lp::Term> column;
    for (ArcId a : best.arcs) column.push_back({a, Rational(1)});
    simplex.add_column(1, Rational(0), std::nullopt, column);
    columns.push_back(std::move(best));
  }

  Rational total = simplex.objective_value();
  comb.master_value = total;
  if (total < 1)
    throw InternalError("decompose: master value " + to_string(total) +
                        " below one; x does not dominate a convex combination of k-arborescences");
  for (std::size_t j = 0; j < columns.size(); ++j) {
    Rational lambda = simplex.value(j);
    if (lambda <= 0) continue;
    ArborescenceSet term{ArcSet{}, root, k, direction};
    for (ArcId a : columns[j].arcs) term.arcs.insert(support[a]);
    comb.terms.push_back({lambda / total, std::move(term)});
  }
  return comb;
}

inline ConvexCombination decompose(const Instance& inst, const FractionalSolution& sol, Direction direction) {
  return decompose(inst, sol.x, sol.root, sol.k, direction);
}

}  // namespace kacss
