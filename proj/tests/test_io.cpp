#include <gtest/gtest.h>

#include "mbd/io.hpp"

using namespace mbd;

TEST(BoardGrammar, BasicShapes) {
  EXPECT_EQ(parse_graph("path:4"), make_path(4));
  EXPECT_EQ(parse_graph("cycle:5"), make_cycle(5));
  EXPECT_EQ(parse_graph("complete:3"), make_complete(3));
  EXPECT_EQ(parse_graph(" empty:2 "), make_empty(2));
  const Board b = parse_board("grid2:4");
  EXPECT_EQ(b.grid_columns, 4);
  EXPECT_EQ(b.start.graph(), Grid2(4).graph());
  EXPECT_EQ(b.start.to_move(), Player::Dominator);
}

TEST(BoardGrammar, ProductsNest) {
  EXPECT_EQ(parse_graph("prod(path:2,cycle:3)"), cartesian_product(make_path(2), make_cycle(3)));
  EXPECT_EQ(parse_graph("prod(prod(path:2,path:2),complete:2)"),
            cartesian_product(cartesian_product(make_path(2), make_path(2)), make_complete(2)));
}

TEST(BoardGrammar, EdgeList) {
  const Graph g = parse_graph("edges:4:0-1;1-2;2-3");
  EXPECT_EQ(g, make_path(4));
  EXPECT_EQ(parse_graph("edges:3"), make_empty(3));
}

TEST(BoardGrammar, GadgetsKeepTheirOpening) {
  const Board b = parse_board("rho:4");
  ASSERT_TRUE(b.gadget);
  EXPECT_EQ(b.gadget->kind, GadgetKind::Rho);
  EXPECT_TRUE(b.start.same_state(build_gadget({GadgetKind::Rho, 4}).position));
  const Position s = b.with_first(Player::Staller);
  EXPECT_EQ(s.to_move(), Player::Staller);
  EXPECT_EQ(s.stall(), b.start.stall());
  EXPECT_EQ(s.predom(), b.start.predom());
}

TEST(BoardGrammar, Rejects) {
  for (const char* bad : {"path", "path:x", "prod(path:2)", "prod(path:2,path:3", "torus:3", "edges:3:0-5",
                          "edges:3:01", "rho:1"}) {
    EXPECT_THROW(parse_board(bad), std::invalid_argument) << bad;
  }
}

TEST(Vertices, LabelsAndIndices) {
  const Graph g = Grid2(5).graph();
  EXPECT_EQ(parse_vertex(g, "u3"), Grid2(5).u(3));
  EXPECT_EQ(parse_vertex(g, "v1"), Grid2(5).v(1));
  EXPECT_EQ(parse_vertex(g, "7"), 7);
  EXPECT_THROW(parse_vertex(g, "10"), std::invalid_argument);
  EXPECT_THROW(parse_vertex(g, "w2"), std::invalid_argument);
  EXPECT_EQ(parse_player("S"), Player::Staller);
  EXPECT_EQ(parse_player("dominator"), Player::Dominator);
  EXPECT_THROW(parse_player("x"), std::invalid_argument);
}

TEST(Json, ValuesAndPositions) {
  EXPECT_EQ(to_json(GameValue::dominator_in(3))["claims"], 3);
  EXPECT_EQ(to_json(GameValue::staller_win())["kind"], "StallerWin");
  const Grid2 grid(3);
  Position p = new_position(grid.graph(), {}, {}, Player::Dominator).apply(Move::claim(grid.u(2)));
  const json j = to_json(p);
  EXPECT_EQ(j["dom"], json::array({grid.u(2)}));
  EXPECT_EQ(j["to_move"], "Staller");
  EXPECT_EQ(j["graph"]["order"], 6);
  EXPECT_EQ(j["graph"]["labels"][grid.v(1)], "v1");
  EXPECT_EQ(j["status"]["kind"], "Ongoing");
  EXPECT_EQ(j["dominated"].size(), 4u);
}

TEST(Json, RecordsAndReports) {
  const SolveReport r = solve(new_position(make_path(3), {}, {}, Player::Dominator));
  const json j = to_json(r);
  EXPECT_EQ(j["value"]["claims"], 1);
  EXPECT_EQ(j["bound"], "exact");
  ASSERT_FALSE(j["principal_variation"]["moves"].empty());
  EXPECT_EQ(j["principal_variation"]["moves"][0]["player"], "Dominator");
  EXPECT_EQ(j["principal_variation"]["dominator_claims"], 1);
}

TEST(Json, ManifestSeparatesTimestamp) {
  RunManifest m;
  m.command = "solve";
  m.arguments = {{"graph", "path:3"}};
  m.started_at = "x";
  m.wall_clock_seconds = 1.5;
  json a = to_json(m);
  m.started_at = "y";
  m.wall_clock_seconds = 9;
  json b = to_json(m);
  EXPECT_NE(a, b);
  a.erase("timestamp");
  b.erase("timestamp");
  EXPECT_EQ(a, b);
}
