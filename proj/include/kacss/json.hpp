#pragma once

// JSON views of solver results. Every rational is written as "num/den".

#include <json.hpp>

#include "kacss/arborescence.hpp"
#include "kacss/gap.hpp"
#include "kacss/lpacss.hpp"
#include "kacss/rational.hpp"
#include "kacss/rounding.hpp"

namespace kacss {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& q : v) out.push_back(to_string(q));
  return out;
}

inline Json to_json(const ArcSet& s) {
  Json out = Json::array();
  for (ArcId a : s) out.push_back(a);
  return out;
}

inline Json to_json(const CutCertificate& c) {
  Json out;
  out["side"] = c.side;
  out["value"] = to_json(c.value);
  return out;
}

/// Cutting-plane run: every separated cut, the objective after each LP
/// solve, and the final point.
inline Json transcript_json(const FractionalSolution& sol) {
  Json out;
  out["root"] = sol.root;
  out["k"] = sol.k;
  out["value"] = to_json(sol.value);
  out["x_total"] = to_json(sol.total());
  out["iterations"] = sol.trajectory.size();
  out["seed_rows"] = sol.seed_rows;
  Json cuts = Json::array();
  for (const CutCertificate& c : sol.cuts) cuts.push_back(to_json(c));
  out["cuts"] = std::move(cuts);
  out["trajectory"] = to_json(sol.trajectory);
  out["x"] = to_json(sol.x);
  out["fractional_arcs"] = to_json(fractional_support(sol));
  return out;
}

inline Json decomposition_json(const ConvexCombination& comb) {
  Json out;
  out["root"] = comb.root;
  out["k"] = comb.k;
  out["direction"] = to_string(comb.direction);
  out["master_value"] = to_json(comb.master_value);
  out["pricing_rounds"] = comb.pricing_rounds;
  Json terms = Json::array();
  for (const WeightedTerm& t : comb.terms) {
    Json term;
    term["lambda"] = to_json(t.weight);
    term["arcs"] = to_json(t.term.arcs);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

inline Json rounding_json(const RoundingReport& r) {
  Json out;
  out["mode"] = to_string(r.mode);
  if (r.seed) out["seed"] = *r.seed;
  out["size"] = to_json(r.size);
  out["lp_value"] = to_json(r.lp_value);
  out["ratio"] = r.ratio ? to_json(*r.ratio) : Json(nullptr);
  out["bound"] = to_json(r.bound);
  out["guarantee"] = r.unit_costs ? "min{7/4, 1+1/k}" : "no guarantee";
  out["within_bound"] = r.within_bound;
  out["expected_size"] = to_json(r.expected);
  out["in_term"] = r.in_term;
  out["out_term"] = r.out_term;
  out["arcs"] = to_json(r.output);
  return out;
}

inline Json ratio_chain_json(const RatioChain& c) {
  Json out;
  out["x_total"] = to_json(c.x_total);
  out["fractional_arcs"] = c.fractional;
  out["x_fractional"] = to_json(c.x_fractional);
  out["expected_size"] = to_json(c.expected);
  out["quadratic_bound"] = to_json(c.quadratic);
  out["support_bound"] = to_json(c.support);
  out["guarantee"] = to_json(c.guarantee);
  return out;
}

inline Json gap_json(const GapReport& r) {
  Json out;
  out["depth"] = r.params.depth;
  out["columns"] = r.params.columns;
  out["lp_value"] = to_json(r.lp_value);
  out["exact_opt"] = r.exact_opt ? to_json(*r.exact_opt) : Json(nullptr);
  out["exact_proven"] = r.exact_proven;
  out["nodes"] = r.exact_nodes;
  out["ratio"] = r.ratio ? to_json(*r.ratio) : Json(nullptr);
  out["opt_lower_bound"] = to_json(r.opt_lower_bound);
  out["gap_lower_bound"] = to_json(r.gap_lower_bound);
  out["all_halves_feasible"] = r.all_halves_feasible;
  out["all_halves_cost"] = to_json(r.all_halves_cost);
  out["warnings"] = r.warnings;
  return out;
}

/// Per-arc levels of a gap instance, written next to the instance file.
inline Json gap_levels_json(const GapInstance& g) {
  Json out;
  out["depth"] = g.params.depth;
  out["columns"] = g.params.columns;
  out["source"] = g.source;
  out["levels"] = g.levels;
  return out;
}

}  // namespace kacss
