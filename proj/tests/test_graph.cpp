#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mbd/graph.hpp"
#include "oracle.hpp"

using namespace mbd;

TEST(Graph, PathShapes) {
  EXPECT_EQ(make_path(1).order(), 1);
  EXPECT_EQ(make_path(1).size(), 0);
  const Graph p3 = make_path(3);
  EXPECT_EQ(p3.edges(), (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}));
  const Graph p5 = make_path(5);
  EXPECT_EQ(p5.size(), 4);
  EXPECT_EQ(p5.degree_sequence(), (std::vector<int>{1, 2, 2, 2, 1}));
  EXPECT_THROW(make_path(0), std::invalid_argument);
}

TEST(Graph, CompleteAndCycle) {
  EXPECT_EQ(make_complete(3).size(), 3);
  EXPECT_EQ(make_complete(1).size(), 0);
  const Graph c4 = make_cycle(4);
  EXPECT_EQ(c4.size(), 4);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(c4.degree(v), 2);
  EXPECT_THROW(make_cycle(2), std::invalid_argument);
}

TEST(Graph, RejectsBadInput) {
  EXPECT_THROW(Graph(3, {{1, 1}}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {{0, 3}}), std::invalid_argument);
  EXPECT_THROW(Graph(65, {}), std::invalid_argument);
  EXPECT_THROW(Graph(2, {}, {"a"}), std::invalid_argument);
}

TEST(Graph, AdjacencySymmetricWithoutLoops) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const Graph g = oracle::random_connected_graph(rng, 9, 0.3);
    for (int a = 0; a < g.order(); ++a) {
      EXPECT_FALSE(g.adjacent(a, a));
      EXPECT_TRUE(g.neighbors(a).subset_of(g.vertices()));
      for (int b = 0; b < g.order(); ++b) EXPECT_EQ(g.adjacent(a, b), g.adjacent(b, a));
    }
  }
}

TEST(Graph, ProductOfTwoEdgesIsSquare) {
  const Graph sq = cartesian_product(make_path(2), make_path(2));
  EXPECT_EQ(sq.order(), 4);
  EXPECT_EQ(sq.size(), 4);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(sq.degree(v), 2);
  EXPECT_EQ(cartesian_product(make_complete(2), make_complete(2)), sq);
}

TEST(Graph, ProductLabelsAndCommutesUpToInvariants) {
  const Graph a = make_path(3);
  const Graph b = make_cycle(4);
  const Graph ab = cartesian_product(a, b);
  const Graph ba = cartesian_product(b, a);
  EXPECT_EQ(ab.order(), 12);
  EXPECT_EQ(ab.size(), ba.size());
  auto da = ab.degree_sequence();
  auto db = ba.degree_sequence();
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  EXPECT_EQ(da, db);
  EXPECT_EQ(ab.label(1 * 4 + 2), "(1,2)");
}

TEST(Grid2, MatchesPathProduct) {
  for (int n = 1; n <= 13; ++n) {
    const Grid2 grid(n);
    EXPECT_EQ(grid.graph().order(), 2 * n);
    EXPECT_EQ(grid.graph().size(), 3 * n - 2);
    for (int i = 1; i <= n; ++i) {
      EXPECT_TRUE(grid.graph().adjacent(grid.u(i), grid.v(i)));
      if (i < n) {
        EXPECT_TRUE(grid.graph().adjacent(grid.u(i), grid.u(i + 1)));
        EXPECT_TRUE(grid.graph().adjacent(grid.v(i), grid.v(i + 1)));
      }
      EXPECT_EQ(grid.column_of(grid.v(i)), i);
      EXPECT_EQ(grid.row_of(grid.v(i)), 1);
    }
    const Graph prod = cartesian_product(make_path(2), make_path(n));
    EXPECT_EQ(prod.size(), grid.graph().size());
  }
  EXPECT_EQ(Grid2(13).graph().size(), 37);
  EXPECT_EQ(Grid2(1).graph(), make_complete(2));
  EXPECT_EQ(*Grid2(4).graph().find_label("v3"), Grid2(4).v(3));
}

TEST(Domination, DominatingSetChecks) {
  EXPECT_TRUE(is_dominating_set(make_cycle(4), VertexSet::of({0, 2})));
  EXPECT_TRUE(is_dominating_set(make_path(5), VertexSet::of({1, 3})));
  EXPECT_FALSE(is_dominating_set(make_path(5), VertexSet::of({0})));
  const Graph g = make_cycle(7);
  EXPECT_TRUE(is_dominating_set(g, g.vertices()));
}

TEST(Domination, RookGraphs) {
  EXPECT_EQ(domination_number(cartesian_product(make_complete(2), make_complete(3))), 2);
  EXPECT_EQ(domination_number(cartesian_product(make_complete(3), make_complete(3))), 3);
  EXPECT_EQ(domination_number(make_path(1)), 1);
  EXPECT_EQ(enumerate_gamma_sets(make_path(1)), std::vector<VertexSet>{VertexSet::of({0})});
}

TEST(Domination, AgreesWithSubsetOracle) {
  std::mt19937_64 rng(11);
  std::vector<Graph> corpus = {make_path(6), make_cycle(6), make_cycle(7), Grid2(4).graph()};
  for (int t = 0; t < 30; ++t) corpus.push_back(oracle::random_connected_graph(rng, 4 + t % 7, 0.25));
  for (const Graph& g : corpus) {
    const int k = domination_number(g);
    EXPECT_EQ(k, oracle::naive_domination_number(g));
    std::vector<std::uint64_t> got;
    for (VertexSet s : enumerate_gamma_sets(g)) {
      EXPECT_EQ(s.size(), k);
      EXPECT_TRUE(is_dominating_set(g, s));
      got.push_back(s.mask());
    }
    EXPECT_EQ(got, oracle::naive_gamma_sets(g));
  }
  const auto p6 = enumerate_gamma_sets(make_path(6));
  EXPECT_NE(std::find(p6.begin(), p6.end(), VertexSet::of({1, 4})), p6.end());
}

TEST(Domination, RefusesLargeGraphs) {
  EXPECT_THROW(domination_number(make_path(kExhaustiveLimit + 1)), LimitError);
  EXPECT_THROW(enumerate_gamma_sets(make_cycle(kExhaustiveLimit + 1)), LimitError);
}
