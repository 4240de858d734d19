#include <gtest/gtest.h>

#include <random>

#include "mbd/gadgets.hpp"
#include "mbd/position.hpp"
#include "oracle.hpp"

using namespace mbd;

namespace {

Position restore(const Graph& g, VertexSet dom, VertexSet stall, Player to_move, VertexSet predom = {}) {
  return Position::restore(std::make_shared<const Graph>(g), dom, stall, predom, to_move, dom.size());
}

}  // namespace

TEST(Position, StatusExamples) {
  EXPECT_EQ(restore(make_path(1), VertexSet::of({0}), {}, Player::Staller).status().kind, StatusKind::DominatorWin);
  const GameStatus s = restore(make_path(3), {}, VertexSet::of({0, 1}), Player::Dominator).status();
  EXPECT_EQ(s.kind, StatusKind::StallerWin);
  EXPECT_EQ(s.isolated, 0);
  EXPECT_EQ(build_gadget({GadgetKind::Rho, 2}).position.status().kind, StatusKind::Ongoing);
}

TEST(Position, PredominatedVertexIsNeverIsolated) {
  const Position p = restore(make_path(2), {}, VertexSet::of({0, 1}), Player::Dominator, VertexSet::of({0, 1}));
  EXPECT_EQ(p.status().kind, StatusKind::DominatorWin);
  const Position q = restore(make_path(3), {}, VertexSet::of({0, 1}), Player::Dominator, VertexSet::of({0}));
  EXPECT_EQ(q.status().kind, StatusKind::Ongoing);
}

TEST(Position, LegalMoves) {
  const Position p = restore(make_cycle(4), VertexSet::of({0}), VertexSet::of({1}), Player::Staller);
  EXPECT_EQ(p.legal_moves(), (std::vector<Move>{Move::claim(2), Move::claim(3)}));
  const Position q = restore(make_cycle(4), VertexSet::of({0}), VertexSet::of({1}), Player::Dominator);
  const auto with_skip = q.legal_moves(true);
  EXPECT_NE(std::find(with_skip.begin(), with_skip.end(), Move::skip()), with_skip.end());
  const Position last = restore(make_path(5), VertexSet::of({1}), VertexSet::of({0, 2, 4}), Player::Dominator);
  EXPECT_EQ(last.legal_moves(), std::vector<Move>{Move::claim(3)});
  EXPECT_THROW(restore(make_path(1), VertexSet::of({0}), {}, Player::Staller).legal_moves(), std::logic_error);
}

TEST(Position, ApplyMove) {
  const Position k2 = new_position(make_path(2), {}, {}, Player::Dominator);
  const Position a = k2.apply(Move::claim(1));
  EXPECT_EQ(a.dom(), VertexSet::of({1}));
  EXPECT_EQ(a.to_move(), Player::Staller);
  EXPECT_EQ(a.dominator_moves(), 1);

  const Position p3 = new_position(make_path(3), {}, {}, Player::Dominator);
  const Position s = p3.apply(Move::skip(), true);
  EXPECT_EQ(s.dom(), VertexSet());
  EXPECT_EQ(s.stall(), VertexSet());
  EXPECT_EQ(s.dominator_moves(), 0);
  EXPECT_EQ(s.to_move(), Player::Staller);
  EXPECT_THROW(p3.apply(Move::skip(), false), IllegalMove);

  const Position b = p3.apply(Move::claim(0));
  EXPECT_THROW(b.apply(Move::claim(0)), IllegalMove);
  EXPECT_THROW(b.apply(Move::claim(7)), IllegalMove);
  EXPECT_THROW(b.apply(Move::skip(), true), IllegalMove);
}

TEST(Position, DominatedVertices) {
  const Gadget rho = build_gadget({GadgetKind::Rho, 5});
  EXPECT_EQ(rho.position.dominated(), VertexSet::of({rho.u(1)}));
  const Position empty = new_position(make_cycle(5), {}, {}, Player::Dominator);
  EXPECT_TRUE(empty.dominated().empty());
  const Graph g = make_cycle(5);
  EXPECT_EQ(restore(g, g.vertices(), {}, Player::Staller).dominated(), g.vertices());
}

TEST(Position, OverlapRejected) {
  auto g = std::make_shared<const Graph>(make_path(3));
  EXPECT_THROW(Position(g, VertexSet::of({1}), {}, Player::Dominator, VertexSet::of({1})), std::invalid_argument);
}

TEST(Position, InitialClaimsAreNotCountedAsMoves) {
  auto g = std::make_shared<const Graph>(make_path(4));
  const Position p(g, {}, {}, Player::Staller, VertexSet::of({0}));
  EXPECT_EQ(p.dominator_moves(), 0);
  EXPECT_EQ(p.initial_dom(), VertexSet::of({0}));
  EXPECT_EQ(p.apply(Move::claim(3)).apply(Move::claim(2)).dominator_moves(), 1);
}

// Random playouts: the status agrees with the oracle's rule evaluation, a
// Staller win is never undone, filling every free vertex for Dominator wins,
// and records replay bit-exactly.
TEST(Position, RandomPlayoutProperties) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const Graph g = oracle::random_connected_graph(rng, 3 + t % 8, 0.2);
    VertexSet predom;
    for (int v = 0; v < g.order(); ++v)
      if (rng() % 5 == 0) predom.insert(v);
    const Position start(std::make_shared<const Graph>(g), {}, predom, t % 2 ? Player::Staller : Player::Dominator);
    GameRecord rec(start);
    Position p = start;
    while (!p.status().terminal()) {
      const oracle::Board b(p);
      std::vector<int> owner(g.order(), 0);
      for (int v : p.dom()) owner[v] = 1;
      for (int v : p.stall()) owner[v] = 2;
      EXPECT_FALSE(oracle::some_isolated(b, owner));
      EXPECT_FALSE(oracle::all_dominated(b, owner));

      Position fill = p;
      for (int v : p.free()) fill = Position::restore(fill.graph_ptr(), fill.dom() | VertexSet::single(v), fill.stall(),
                                                      fill.predom(), Player::Staller, 0);
      EXPECT_EQ(fill.status().kind, StatusKind::DominatorWin);

      const auto moves = p.legal_moves(true);
      const Move m = moves[rng() % moves.size()];
      rec.push(p.to_move(), m);
      p = p.apply(m, true);
    }
    if (p.status().kind == StatusKind::StallerWin) {
      const int x = p.status().isolated;
      EXPECT_FALSE(p.predom().contains(x));
      EXPECT_TRUE(g.closed_neighborhood(x).subset_of(p.stall()));
      Position more = Position::restore(p.graph_ptr(), p.dom(), p.stall() | p.free(), p.predom(), Player::Dominator, 0);
      EXPECT_EQ(more.status().kind, StatusKind::StallerWin);
    }
    const Position again = rec.replay(true);
    EXPECT_TRUE(again.same_state(p));
    EXPECT_EQ(rec.dominator_claims(), p.dominator_moves());
  }
}

TEST(GameRecord, ReplayRejectsBadRecord) {
  GameRecord rec(new_position(make_path(3), {}, {}, Player::Dominator));
  rec.push(Player::Dominator, Move::claim(1));
  rec.push(Player::Staller, Move::claim(1));
  EXPECT_THROW(rec.replay(), IllegalMove);
}

TEST(GameRecord, SkipsCountedSeparately) {
  GameRecord rec(new_position(make_path(4), {}, {}, Player::Dominator));
  rec.push(Player::Dominator, Move::skip());
  rec.push(Player::Staller, Move::claim(0));
  rec.push(Player::Dominator, Move::claim(2));
  EXPECT_EQ(rec.dominator_claims(), 1);
  EXPECT_EQ(rec.dominator_skips(), 1);
  EXPECT_EQ(rec.replay().dominator_moves(), 1);
}
