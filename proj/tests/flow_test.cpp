#include "kacss/flow.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace kacss {
namespace {

Instance cycle(std::size_t n) {
  Instance inst;
  inst.n = n;
  for (VertexId v = 0; v < n; ++v) inst.arcs.push_back(Arc{v, (v + 1) % n, 1});
  return inst;
}

Instance bidirected_complete(std::size_t n) {
  Instance inst;
  inst.n = n;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v)
      if (u != v) inst.arcs.push_back(Arc{u, v, 1});
  return inst;
}

std::vector<Rational> ones(const Instance& inst) { return std::vector<Rational>(inst.arcs.size(), Rational(1)); }

TEST(MaxFlow, SinglePathOnCycle) {
  Instance inst = cycle(4);
  auto result = max_flow(inst, ones(inst), 0, 2);
  EXPECT_EQ(result.value, 1);
  EXPECT_EQ(result.cut.value, 1);
  // Canonical cut: residual reachability from the source.
  EXPECT_TRUE(result.cut.side == std::vector<VertexId>({0}) || result.cut.side == std::vector<VertexId>({0, 1}));
}

TEST(MaxFlow, TwoDisjointPaths) {
  Instance inst;
  inst.n = 4;
  inst.arcs = {{0, 1, 1}, {1, 3, 1}, {0, 2, 1}, {2, 3, 1}};
  EXPECT_EQ(max_flow(inst, ones(inst), 0, 3).value, 2);
}

TEST(MaxFlow, RationalCapacities) {
  Instance inst;
  inst.n = 3;
  inst.arcs = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}};
  std::vector<Rational> cap = {Rational(2, 3), Rational(1, 2), Rational(1, 7)};
  auto result = max_flow(inst, cap, 0, 2);
  EXPECT_EQ(result.value, Rational(1, 2) + Rational(1, 7));
  EXPECT_EQ(result.cut.value, result.value);
}

TEST(MaxFlow, RejectsSourceEqualsSink) {
  Instance inst = cycle(3);
  EXPECT_THROW(max_flow(inst, ones(inst), 1, 1), std::invalid_argument);
}

TEST(MaxFlow, MatchesExhaustiveCutEnumeration) {
  // Random multigraphs with random rational capacities, n <= 5.
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 250; ++trial) {
    Instance inst;
    inst.n = 2 + uniform_below(rng, 4);
    std::size_t m = uniform_below(rng, 14);
    std::vector<Rational> cap;
    for (std::size_t i = 0; i < m; ++i) {
      VertexId u = uniform_below(rng, inst.n);
      VertexId v = (u + 1 + uniform_below(rng, inst.n - 1)) % inst.n;
      inst.arcs.push_back(Arc{u, v, 1});
      cap.emplace_back(static_cast<long>(uniform_below(rng, 7)), static_cast<long>(1 + uniform_below(rng, 4)));
    }
    VertexId s = uniform_below(rng, inst.n);
    VertexId t = (s + 1 + uniform_below(rng, inst.n - 1)) % inst.n;
    auto result = max_flow(inst, cap, s, t);
    EXPECT_EQ(result.value, oracle::min_st_cut(inst, cap, s, t));
    EXPECT_EQ(result.value, result.cut.value);
    std::vector<bool> side(inst.n, false);
    for (VertexId v : result.cut.side) side[v] = true;
    EXPECT_TRUE(side[s]);
    EXPECT_FALSE(side[t]);
    EXPECT_EQ(cut_value<Rational>(inst, cap, side), result.value);
  }
}

TEST(IsKArcConnected, CompleteGraphAndCycle) {
  EXPECT_TRUE(is_k_arc_connected(bidirected_complete(4), 3));
  EXPECT_FALSE(is_k_arc_connected(bidirected_complete(4), 4));
  EXPECT_TRUE(is_k_arc_connected(cycle(6), 1));
  EXPECT_FALSE(is_k_arc_connected(cycle(6), 2));
}

TEST(IsKArcConnected, SubsetAndDegenerateCases) {
  Instance inst = bidirected_complete(3);
  EXPECT_FALSE(is_k_arc_connected(inst, ArcSet{}, 1));
  Instance single;
  single.n = 1;
  EXPECT_TRUE(is_k_arc_connected(single, ArcSet{}, 5));
  // The forward triangle alone is strongly connected.
  ArcSet forward;
  for (ArcId a = 0; a < inst.arcs.size(); ++a)
    if (inst.arcs[a].head == (inst.arcs[a].tail + 1) % 3) forward.insert(a);
  EXPECT_TRUE(is_k_arc_connected(inst, forward, 1));
}

TEST(IsKArcConnected, AgreesWithCutEnumerationAndIsMonotone) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    Instance inst;
    inst.n = 2 + uniform_below(rng, 4);
    std::size_t m = uniform_below(rng, 16);
    for (std::size_t i = 0; i < m; ++i) {
      VertexId u = uniform_below(rng, inst.n);
      VertexId v = (u + 1 + uniform_below(rng, inst.n - 1)) % inst.n;
      inst.arcs.push_back(Arc{u, v, 1});
    }
    std::vector<bool> all(inst.arcs.size(), true);
    bool previous = true;
    for (int k = 0; k <= 4; ++k) {
      bool connected = is_k_arc_connected(inst, k);
      EXPECT_EQ(connected, oracle::k_connected_by_cuts(inst, all, k));
      if (!previous) {
        EXPECT_FALSE(connected);
      }
      previous = connected;
    }
  }
}

TEST(MinViolatedCut, CycleWithOnesHasNoViolation) {
  Instance inst = cycle(5);
  EXPECT_FALSE(min_violated_cut(inst, ones(inst), 0, 1).has_value());
  auto cut = min_violated_cut(inst, ones(inst), 0, 2);
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->value, 1);
}

TEST(MinViolatedCut, ZeroVectorIsViolated) {
  Instance inst = bidirected_complete(4);
  std::vector<Rational> zero(inst.arcs.size(), Rational(0));
  auto cut = min_violated_cut(inst, zero, 0, 1);
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->value, 0);
  EXPECT_FALSE(cut->side.empty());
  EXPECT_LT(cut->side.size(), inst.n);
}

TEST(MinViolatedCut, CompleteAgainstEnumeration) {
  // The oracle finds a violation iff one exists, and returns the global minimum.
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 250; ++trial) {
    Instance inst;
    inst.n = 2 + uniform_below(rng, 4);
    std::size_t m = 2 + uniform_below(rng, 14);
    std::vector<Rational> x;
    for (std::size_t i = 0; i < m; ++i) {
      VertexId u = uniform_below(rng, inst.n);
      VertexId v = (u + 1 + uniform_below(rng, inst.n - 1)) % inst.n;
      inst.arcs.push_back(Arc{u, v, 1});
      x.emplace_back(static_cast<long>(uniform_below(rng, 5)), 4);
    }
    int k = 1 + static_cast<int>(uniform_below(rng, 2));
    VertexId root = uniform_below(rng, inst.n);
    Rational brute = oracle::min_global_cut(inst, x);
    auto cut = min_violated_cut(inst, x, root, k);
    EXPECT_EQ(cut.has_value(), brute < k);
    if (cut) {
      EXPECT_EQ(cut->value, brute);
      std::vector<bool> side(inst.n, false);
      for (VertexId v : cut->side) side[v] = true;
      EXPECT_EQ(cut_value<Rational>(inst, x, side), cut->value);
    }
  }
}

TEST(MinViolatedCut, RootLeavingFamilyOnlyReportsSetsWithRoot) {
  Instance inst = cycle(4);
  std::vector<Rational> x = ones(inst);
  x[3] = 0;  // arc 3 -> 0 removed: a path from 0 still reaches everyone
  EXPECT_FALSE(min_violated_cut(inst, x, 0, 1, CutFamily::kRootLeaving).has_value());
  auto cut = min_violated_cut(inst, x, 0, 1, CutFamily::kAll);
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->value, 0);
}

}  // namespace
}  // namespace kacss
