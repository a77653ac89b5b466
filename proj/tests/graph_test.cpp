#include "kacss/graph.hpp"

#include <gtest/gtest.h>

#include <cstdint>

#include "kacss/flow.hpp"
#include "oracles.hpp"

namespace kacss {
namespace {

TEST(ParseInstance, TwoCycle) {
  Instance inst = parse_instance("p kacss 2 2 1\na 0 1 1/1\na 1 0 1/1");
  EXPECT_EQ(inst.n, 2u);
  EXPECT_EQ(inst.k, 1);
  ASSERT_EQ(inst.arcs.size(), 2u);
  EXPECT_EQ(inst.arcs[1].tail, 1u);
  EXPECT_EQ(inst.arcs[1].head, 0u);
  EXPECT_EQ(inst.arcs[0].cost, 1);
}

TEST(ParseInstance, GapBaseCaseWithComments) {
  // G(1,s,s) with three columns: a bidirected 4-cycle, each arc costing 1/8.
  std::string text =
      "# depth 1, three columns\n"
      "p kacss 4 8 1\n"
      "a 0 1 1/8\na 1 0 1/8\na 1 2 1/8\na 2 1 1/8\n"
      "# second half\n"
      "a 2 3 1/8\na 3 2 1/8\na 3 0 1/8\na 0 3 1/8\n";
  Instance inst = parse_instance(text);
  EXPECT_EQ(inst.n, 4u);
  ASSERT_EQ(inst.arcs.size(), 8u);
  Rational total = 0;
  for (const Arc& a : inst.arcs) {
    EXPECT_EQ(a.cost, Rational(1, 8));
    total += a.cost;
  }
  EXPECT_EQ(total, 1);
}

TEST(ParseInstance, RejectsMalformedInput) {
  EXPECT_THROW(parse_instance("p kacss 3 2 1\na 0 1 1/1\na 1 0 -1/1"), ParseError);
  EXPECT_THROW(parse_instance("p kacss 2 1 0\na 0 1 1/1"), ParseError);
  EXPECT_THROW(parse_instance("p kacss 2 1 1\na 0 2 1/1"), ParseError);
  EXPECT_THROW(parse_instance("p kacss 2 2 1\na 0 1 1/1"), ParseError);
  EXPECT_THROW(parse_instance("p kacss 2 1 1\na 0 0 1/1"), ParseError);
  EXPECT_THROW(parse_instance("p kacss 2 1 1\na 0 1 1/0"), ParseError);
  EXPECT_THROW(parse_instance("p kacss 2 1 1\na 0 1 1"), ParseError);
  EXPECT_THROW(parse_instance("p dimacs 2 1 1\na 0 1 1/1"), ParseError);
  EXPECT_THROW(parse_instance("a 0 1 1/1"), ParseError);
  EXPECT_THROW(parse_instance(""), ParseError);
}

TEST(WriteInstance, HeaderOnlyInstanceRoundTrips) {
  Instance inst;
  inst.n = 1;
  inst.k = 1;
  EXPECT_EQ(write_instance(inst), "p kacss 1 0 1\n");
  EXPECT_EQ(parse_instance(write_instance(inst)), inst);
}

TEST(WriteInstance, RoundTripPreservesArcsAndCosts) {
  // Property: parse . write is the identity on random instances with
  // arbitrary rational costs and parallel arcs.
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    Instance inst;
    inst.n = 2 + uniform_below(rng, 6);
    inst.k = 1 + static_cast<int>(uniform_below(rng, 3));
    std::size_t m = uniform_below(rng, 15);
    for (std::size_t i = 0; i < m; ++i) {
      VertexId u = uniform_below(rng, inst.n);
      VertexId v = (u + 1 + uniform_below(rng, inst.n - 1)) % inst.n;
      Rational c(static_cast<long>(uniform_below(rng, 50)), static_cast<long>(1 + uniform_below(rng, 40)));
      inst.arcs.push_back(Arc{u, v, c});
    }
    std::string text = write_instance(inst);
    EXPECT_EQ(parse_instance(text), inst);
    EXPECT_EQ(write_instance(parse_instance(text)), text);
  }
}

TEST(ArcSetFile, ParsesAscendingIds) {
  std::istringstream in("0\n3\n# note\n7\n");
  ArcSet s = parse_arc_set(in, 8);
  EXPECT_EQ(s, (ArcSet{0, 3, 7}));
  std::istringstream bad("3\n1\n");
  EXPECT_THROW(parse_arc_set(bad, 8), ParseError);
  std::istringstream range("9\n");
  EXPECT_THROW(parse_arc_set(range, 8), ParseError);
}

TEST(RandomKConnected, SingleCycle) {
  Instance inst = random_k_connected(5, 1, 0, 7);
  EXPECT_EQ(inst.arcs.size(), 5u);
  std::vector<int> out(5), in(5);
  for (const Arc& a : inst.arcs) {
    ++out[a.tail];
    ++in[a.head];
  }
  for (int v = 0; v < 5; ++v) {
    EXPECT_EQ(out[v], 1);
    EXPECT_EQ(in[v], 1);
  }
  EXPECT_TRUE(is_k_arc_connected(inst, 1));
}

TEST(RandomKConnected, TwoCyclesPlusExtras) {
  Instance inst = random_k_connected(8, 2, 4, 1);
  EXPECT_EQ(inst.arcs.size(), 20u);
  EXPECT_TRUE(is_k_arc_connected(inst, 2));
  EXPECT_TRUE(inst.unit_costs());
}

TEST(RandomKConnected, TwoVerticesUsesParallelArcs) {
  Instance inst = random_k_connected(2, 3, 0, 0);
  EXPECT_EQ(inst.arcs.size(), 6u);
  EXPECT_TRUE(is_k_arc_connected(inst, 3));
  EXPECT_FALSE(is_k_arc_connected(inst, 4));
}

TEST(RandomKConnected, RejectsBadArguments) {
  EXPECT_THROW(random_k_connected(1, 1, 0, 0), std::invalid_argument);
  EXPECT_THROW(random_k_connected(4, 4, 0, 0), std::invalid_argument);
  EXPECT_THROW(random_k_connected(4, 0, 0, 0), std::invalid_argument);
  EXPECT_THROW(random_k_connected(3, 1, 100, 0), std::invalid_argument);
}

TEST(RandomKConnected, DeterministicInSeed) {
  EXPECT_EQ(random_k_connected(9, 3, 5, 42), random_k_connected(9, 3, 5, 42));
  EXPECT_NE(random_k_connected(9, 3, 5, 42), random_k_connected(9, 3, 5, 43));
}

TEST(RandomKConnected, EveryCutCrossedKTimesByEnumeration) {
  // Each Hamiltonian cycle leaves every nonempty proper U at least once.
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::size_t k = 1; k <= std::max<std::size_t>(n - 1, 1); ++k) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Instance inst;
        try {
          inst = random_k_connected(n, k, n * (n - 1) > k * n ? 1 : 0, seed);
        } catch (const std::runtime_error&) {
          // k = n - 1 asks for a Hamiltonian decomposition of the complete
          // digraph, which does not exist for n = 4 or n = 6.
          EXPECT_EQ(k, n - 1) << "n=" << n << " seed=" << seed;
          continue;
        }
        std::vector<bool> all(inst.arcs.size(), true);
        EXPECT_TRUE(oracle::k_connected_by_cuts(inst, all, k)) << "n=" << n << " k=" << k << " seed=" << seed;
        EXPECT_TRUE(is_k_arc_connected(inst, k));
      }
    }
  }
}

}  // namespace
}  // namespace kacss
