#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "kacss/arborescence.hpp"
#include "kacss/errors.hpp"
#include "kacss/flow.hpp"
#include "kacss/graph.hpp"
#include "kacss/lpacss.hpp"
#include "kacss/rational.hpp"

namespace kacss {

enum class RoundingMode { kSampled, kDerandomized };

inline const char* to_string(RoundingMode m) { return m == RoundingMode::kSampled ? "sampled" : "derandomized"; }

/// Fixed stream labels so that the two samples of one run are independent.
inline constexpr std::uint32_t kInStream = 1;
inline constexpr std::uint32_t kOutStream = 2;

/// Index of a term drawn with probability equal to its weight. The draw is a
/// 64-bit word u from an mt19937_64 stream keyed by (seed, stream), compared
/// exactly as u / 2^64 against the cumulative weights.
inline std::size_t sample_index(const ConvexCombination& comb, std::uint64_t seed, std::uint32_t stream = 0) {
  if (comb.terms.empty()) throw std::invalid_argument("sample_term: empty combination");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  std::mt19937_64 rng(seq);
  const std::uint64_t word = rng();
  const Rational u(Integer(word), Integer(1) << 64);
  Rational cumulative = 0;
  for (std::size_t i = 0; i < comb.terms.size(); ++i) {
    cumulative += comb.terms[i].weight;
    if (u < cumulative) return i;
  }
  throw InternalError("sample_term: weights sum to " + to_string(cumulative) + ", not one");
}

inline ArborescenceSet sample_term(const ConvexCombination& comb, std::uint64_t seed, std::uint32_t stream = 0) {
  return comb.terms[sample_index(comb, seed, stream)].term;
}

/// Exact E|T_in ∪ T_out| for independent draws: sum over arcs of
/// p_in + p_out - p_in p_out, optionally weighted by arc costs.
inline Rational expected_union_size(const ConvexCombination& comb_in, const ConvexCombination& comb_out,
                                    std::size_t num_arcs, const std::vector<Rational>* costs = nullptr) {
  std::vector<Rational> p_in = comb_in.marginals(num_arcs);
  std::vector<Rational> p_out = comb_out.marginals(num_arcs);
  Rational total = 0;
  for (ArcId a = 0; a < num_arcs; ++a) {
    Rational p = p_in[a] + p_out[a] - p_in[a] * p_out[a];
    total += costs ? p * (*costs)[a] : p;
  }
  return total;
}

/// min{7/4, 1 + 1/k}.
inline Rational ratio_bound(int k) { return std::min(Rational(7, 4), Rational(1) + Rational(1, k)); }

/// The quantities bounding the output size, from smallest to largest.
struct RatioChain {
  Rational x_total;           // x(A)
  std::size_t fractional = 0; // |F|
  Rational x_fractional;      // x(F)
  Rational expected;          // E|T_in ∪ T_out|
  Rational quadratic;         // sum of 2 x_a - x_a^2
  Rational support;           // x(A) + x(F) - x(F)^2 / |F|
  Rational guarantee;         // min{7/4, 1 + 1/k} x(A)
};

inline RatioChain ratio_chain(const FractionalSolution& sol, const ConvexCombination& comb_in,
                              const ConvexCombination& comb_out) {
  RatioChain c;
  for (const Rational& v : sol.x) {
    c.x_total += v;
    c.quadratic += 2 * v - v * v;
    if (v > 0 && v < 1) {
      ++c.fractional;
      c.x_fractional += v;
    }
  }
  c.expected = expected_union_size(comb_in, comb_out, sol.x.size());
  c.support = c.x_total;
  if (c.fractional > 0) c.support += c.x_fractional - c.x_fractional * c.x_fractional / c.fractional;
  c.guarantee = ratio_bound(sol.k) * c.x_total;
  return c;
}

struct RoundingReport {
  RoundingMode mode = RoundingMode::kDerandomized;
  std::optional<std::uint64_t> seed;
  ArcSet output;
  std::size_t in_term = 0;   // index into comb_in
  std::size_t out_term = 0;  // index into comb_out
  bool unit_costs = true;
  Rational size;      // |output|, or its cost when costs are not all one
  Rational lp_value;  // x(A), or c·x
  std::optional<Rational> ratio;  // size / lp_value, absent when lp_value = 0
  Rational bound;     // min{7/4, 1 + 1/k}; meaningful only for unit costs
  bool within_bound = false;
  Rational expected;  // expected size (or cost) of the sampled union
};

/// Picks one term from each combination and returns their union, after
/// checking that it is k-arc-connected.
inline RoundingReport round_union(const Instance& inst, const FractionalSolution& sol,
                                  const ConvexCombination& comb_in, const ConvexCombination& comb_out,
                                  RoundingMode mode, std::uint64_t seed = 0) {
  if (comb_in.direction != Direction::kIn || comb_out.direction != Direction::kOut)
    throw std::invalid_argument("round_union: expected an in-combination and an out-combination");
  if (comb_in.root != comb_out.root || comb_in.k != comb_out.k || comb_in.k != inst.k)
    throw std::invalid_argument("round_union: combinations disagree on root or k");
  if (comb_in.terms.empty() || comb_out.terms.empty()) throw std::invalid_argument("round_union: empty combination");

  RoundingReport report;
  report.mode = mode;
  report.unit_costs = inst.unit_costs();
  std::vector<Rational> costs;
  for (const Arc& a : inst.arcs) costs.push_back(a.cost);
  auto measure = [&](const ArcSet& s) { return report.unit_costs ? Rational(static_cast<long>(s.size())) : s.cost(inst); };

  if (mode == RoundingMode::kSampled) {
    report.seed = seed;
    report.in_term = sample_index(comb_in, seed, kInStream);
    report.out_term = sample_index(comb_out, seed, kOutStream);
  } else {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < comb_in.terms.size(); ++i)
      for (std::size_t j = 0; j < comb_out.terms.size(); ++j) {
        Rational v = measure(comb_in.terms[i].term.arcs.united(comb_out.terms[j].term.arcs));
        if (!best || v < *best) {
          best = v;
          report.in_term = i;
          report.out_term = j;
        }
      }
  }
  report.output = comb_in.terms[report.in_term].term.arcs.united(comb_out.terms[report.out_term].term.arcs);
  if (!is_k_arc_connected(inst, report.output, inst.k))
    throw InternalError("round_union: union of an in- and an out-k-arborescence is not k-arc-connected");

  report.size = measure(report.output);
  report.lp_value = sol.value;
  if (report.lp_value > 0) report.ratio = report.size / report.lp_value;
  report.bound = ratio_bound(inst.k);
  report.within_bound = report.size <= report.bound * report.lp_value;
  report.expected = expected_union_size(comb_in, comb_out, inst.arcs.size(), report.unit_costs ? nullptr : &costs);
  return report;
}

struct PipelineResult {
  FractionalSolution lp;
  ConvexCombination comb_in;
  ConvexCombination comb_out;
  RoundingReport report;
};

/// Solve the LP, decompose it both ways, and round.
inline PipelineResult solve_pipeline(const Instance& inst, VertexId root, RoundingMode mode, std::uint64_t seed = 0) {
  PipelineResult r;
  r.lp = solve_lp_acss(inst, root);
  r.comb_in = decompose(inst, r.lp, Direction::kIn);
  r.comb_out = decompose(inst, r.lp, Direction::kOut);
  r.report = round_union(inst, r.lp, r.comb_in, r.comb_out, mode, seed);
  return r;
}

}  // namespace kacss
