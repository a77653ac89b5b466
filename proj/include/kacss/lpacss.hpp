#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kacss/errors.hpp"
#include "kacss/flow.hpp"
#include "kacss/graph.hpp"
#include "kacss/rational.hpp"
#include "kacss/simplex.hpp"

namespace kacss {

/// The instance is not k-arc-connected, so (LP-ACSS) has no feasible point.
/// `witness` is a vertex set with fewer than k leaving arcs.
class InfeasibleInstance : public std::runtime_error {
 public:
  explicit InfeasibleInstance(CutCertificate witness)
      : std::runtime_error("instance is not k-arc-connected: a vertex set of size " +
                           std::to_string(witness.side.size()) + " has only " + to_string(witness.value) +
                           " leaving arcs"),
        witness_(std::move(witness)) {}

  const CutCertificate& witness() const { return witness_; }

 private:
  CutCertificate witness_;
};

/// LP over one variable per arc, 0 <= x <= 1, with covering rows
/// x(δ⁺(U)) >= k generated lazily by a separation routine. The object is a
/// value type: copying it snapshots the LP and its basis.
class CutLp {
 public:
  using Separator = std::function<std::optional<CutCertificate>(const std::vector<Rational>&)>;
  enum class Outcome { kOptimal, kInfeasible, kCutoff };

  CutLp(const Instance& inst, std::vector<Rational> objective, int k, Separator separator,
        const std::vector<std::vector<VertexId>>& seed_sides = {})
      : inst_(&inst), k_(k), separator_(std::move(separator)), simplex_(make_program(inst, std::move(objective))) {
    for (const auto& side : seed_sides) add_cut(side);
    seed_rows_ = sides_.size();
  }

  /// Alternates LP solves and separation until no violated row remains.
  /// With a cutoff, stops early once the restricted LP value reaches it; the
  /// restricted value never exceeds the full one, so that is a valid bound.
  Outcome solve(const std::optional<Rational>& cutoff = std::nullopt) {
    for (;;) {
      if (simplex_.optimize() != lp::Status::kOptimal) return Outcome::kInfeasible;
      x_ = simplex_.primal_values();
      value_ = simplex_.objective_value();
      trajectory_.push_back(value_);
      if (cutoff && value_ >= *cutoff) return Outcome::kCutoff;
      std::optional<CutCertificate> cut = separator_(x_);
      if (!cut) return Outcome::kOptimal;
      if (cut->value >= k_) throw InternalError("CutLp: separator returned a satisfied cut");
      separated_.push_back(*cut);
      add_cut(cut->side);
    }
  }

  void set_objective(std::vector<Rational> objective) { simplex_.set_objective(std::move(objective)); }

  /// Fixes an arc variable to a value in [0, 1].
  void fix(ArcId a, const Rational& value) { simplex_.set_bounds(a, value, value); }

  const std::vector<Rational>& x() const { return x_; }
  const Rational& value() const { return value_; }
  const std::vector<CutCertificate>& separated() const { return separated_; }
  const std::vector<std::vector<VertexId>>& row_sides() const { return sides_; }
  std::size_t seed_rows() const { return seed_rows_; }
  const std::vector<Rational>& trajectory() const { return trajectory_; }
  const lp::Simplex& simplex() const { return simplex_; }

 private:
  static lp::LinearProgram make_program(const Instance& inst, std::vector<Rational> objective) {
    if (objective.size() != inst.arcs.size()) throw std::invalid_argument("CutLp: objective length mismatch");
    lp::LinearProgram lp;
    for (Rational& c : objective) lp.add_variable(std::move(c), Rational(0), Rational(1));
    return lp;
  }

  void add_cut(const std::vector<VertexId>& side) {
    std::vector<bool> in_side(inst_->n, false);
    for (VertexId v : side) in_side[v] = true;
    std::vector<lp::Term> terms;
    for (ArcId a = 0; a < inst_->arcs.size(); ++a)
      if (in_side[inst_->arcs[a].tail] && !in_side[inst_->arcs[a].head]) terms.push_back({a, Rational(1)});
    simplex_.add_row(std::move(terms), lp::Relation::kGreaterEqual, k_);
    sides_.push_back(side);
  }

  const Instance* inst_;
  int k_;
  Separator separator_;
  lp::Simplex simplex_;
  std::vector<std::vector<VertexId>> sides_;
  std::size_t seed_rows_ = 0;
  std::vector<CutCertificate> separated_;
  std::vector<Rational> x_;
  Rational value_;
  std::vector<Rational> trajectory_;
};

/// Optimal extreme point of (LP-ACSS) with the rows that certify it.
struct FractionalSolution {
  std::vector<Rational> x;
  Rational value;  // sum of c_a x_a
  VertexId root = 0;
  int k = 1;
  std::size_t seed_rows = 0;               // singleton out- and in-degree rows
  std::vector<std::vector<VertexId>> rows;  // U of every row, seed rows first
  std::vector<CutCertificate> cuts;         // separated rows with their violation value
  std::vector<Rational> trajectory;         // LP value after every solve

  Rational total() const {
    Rational s = 0;
    for (const Rational& v : x) s += v;
    return s;
  }
};

struct LpAcssOptions {
  /// Start from the 2n degree rows x(δ⁺(v)) >= k and x(δ⁻(v)) >= k.
  bool seed_degree_rows = true;
};

/// Degree rows: U = {v} and U = V \ {v} for every vertex.
inline std::vector<std::vector<VertexId>> degree_sides(std::size_t n) {
  std::vector<std::vector<VertexId>> sides;
  if (n < 2) return sides;
  for (VertexId v = 0; v < n; ++v) {
    std::vector<VertexId> complement;
    for (VertexId u = 0; u < n; ++u)
      if (u != v) complement.push_back(u);
    sides.push_back({v});
    sides.push_back(std::move(complement));
  }
  return sides;
}

/// In-degree rows for an out-arborescence: U = V \ {v} for every v != root.
inline std::vector<std::vector<VertexId>> root_in_degree_sides(std::size_t n, VertexId root) {
  std::vector<std::vector<VertexId>> sides;
  for (VertexId v = 0; v < n; ++v) {
    if (v == root) continue;
    std::vector<VertexId> complement;
    for (VertexId u = 0; u < n; ++u)
      if (u != v) complement.push_back(u);
    sides.push_back(std::move(complement));
  }
  return sides;
}

/// Solves (LP-ACSS) by cutting planes, adding the single most violated cut
/// per round until the separation oracle certifies feasibility.
inline FractionalSolution solve_lp_acss(const Instance& inst, VertexId root = 0, LpAcssOptions options = {}) {
  if (inst.n > 0 && root >= inst.n) throw std::invalid_argument("solve_lp_acss: root out of range");
  if (!is_k_arc_connected(inst, inst.k)) {
    std::vector<Rational> ones(inst.arcs.size(), Rational(1));
    auto witness = min_violated_cut(inst, ones, root, inst.k);
    if (!witness) throw InternalError("solve_lp_acss: connectivity check and separation disagree");
    throw InfeasibleInstance(*witness);
  }
  std::vector<Rational> costs;
  for (const Arc& a : inst.arcs) costs.push_back(a.cost);
  CutLp cut_lp(
      inst, std::move(costs), inst.k,
      [&inst, root](const std::vector<Rational>& x) { return min_violated_cut(inst, x, root, inst.k); },
      options.seed_degree_rows ? degree_sides(inst.n) : std::vector<std::vector<VertexId>>{});
  if (cut_lp.solve() != CutLp::Outcome::kOptimal)
    throw InternalError("solve_lp_acss: LP infeasible on a k-arc-connected instance");

  FractionalSolution sol;
  sol.x = cut_lp.x();
  sol.value = cut_lp.value();
  sol.root = root;
  sol.k = inst.k;
  sol.seed_rows = cut_lp.seed_rows();
  sol.rows = cut_lp.row_sides();
  sol.cuts = cut_lp.separated();
  sol.trajectory = cut_lp.trajectory();
  return sol;
}

/// Arcs with 0 < x_a < 1.
inline ArcSet fractional_support(const FractionalSolution& sol) {
  ArcSet f;
  for (ArcId a = 0; a < sol.x.size(); ++a)
    if (sol.x[a] > 0 && sol.x[a] < 1) f.insert(a);
  return f;
}

}  // namespace kacss
