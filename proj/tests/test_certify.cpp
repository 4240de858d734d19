#include <gtest/gtest.h>

#include "mbd/certify.hpp"
#include "oracle.hpp"

using namespace mbd;

namespace {

// Claims the lowest free vertex, and claims to split the board into one
// component whose predominated set covers an undominated vertex.
class LyingSplit : public Strategy {
 public:
  std::string name() const override { return "lying-split"; }
  Player side() const override { return Player::Dominator; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<LyingSplit>(*this); }
  Move choose(const Position& pos, std::optional<Move>) override { return Move::claim(pos.free().lowest()); }
  std::optional<std::vector<Component>> decomposition(const Position& pos) const override {
    Component c;
    c.name = "whole";
    c.position = Position::restore(pos.graph_ptr(), pos.dom(), pos.stall(), pos.graph().vertices(), Player::Staller,
                                   pos.dominator_moves());
    c.strategy = std::make_shared<LyingSplit>();
    for (int v = 0; v < pos.graph().order(); ++v) c.to_global.push_back(v);
    return std::vector<Component>{c};
  }
};

}  // namespace

TEST(Certify, VerdictNames) {
  EXPECT_EQ(to_string(Verdict::Certified), "certified");
  EXPECT_EQ(to_string(Verdict::Refuted), "refuted");
  EXPECT_EQ(to_string(Verdict::Inconclusive), "inconclusive");
}

TEST(Certify, ExactStrategyAttainsSolverValue) {
  for (int n = 1; n <= 5; ++n) {
    for (Player first : {Player::Dominator, Player::Staller}) {
      const Position p = new_position(Grid2(n).graph(), {}, {}, first);
      const GameValue v = solve(p).value;
      auto s = solver_strategy("exact", Player::Dominator);
      const CertificateReport r = certify_strategy(p, *s, v.claims());
      EXPECT_EQ(r.verdict, Verdict::Certified);
      EXPECT_EQ(r.worst, v);
      EXPECT_EQ(r.witness.replay().status().kind, StatusKind::DominatorWin);
      EXPECT_EQ(r.witness.dominator_claims(), v.claims());
    }
  }
}

TEST(Certify, StallerSolverAttainsValue) {
  const Gadget g = build_gadget({GadgetKind::Rho, 4});
  auto s = solver_strategy("exact", Player::Staller);
  const CertificateReport r = certify_strategy(g.position, *s, 4);
  EXPECT_EQ(r.verdict, Verdict::Certified);
  EXPECT_EQ(r.worst, GameValue::dominator_in(4));
  EXPECT_EQ(certify_strategy(g.position, *s, 5).verdict, Verdict::Refuted);
}

TEST(Certify, RefutationCarriesWitness) {
  const Position p = new_position(Grid2(4).graph(), {}, {}, Player::Staller);
  auto s = make_strategy("pairing", p);
  const CertificateReport r = certify_strategy(p, *s, 3);
  EXPECT_EQ(r.verdict, Verdict::Refuted);
  EXPECT_EQ(r.worst, GameValue::dominator_in(4));
  EXPECT_EQ(r.witness.dominator_claims(), 4);
  EXPECT_EQ(r.witness.replay().status().kind, StatusKind::DominatorWin);
}

TEST(Certify, LosingStrategyIsRefuted) {
  // Lowest-free play on P_3 in the S-game: Staller isolates an end vertex.
  const Position p = new_position(make_path(3), {}, {}, Player::Staller);
  LyingSplit greedy;
  const CertificateReport r = certify_strategy(p, greedy, 3);
  EXPECT_EQ(r.verdict, Verdict::Refuted);
  EXPECT_TRUE(r.worst.is_staller_win());
  EXPECT_EQ(r.witness.replay().status().kind, StatusKind::StallerWin);
}

TEST(Certify, NodeLimitIsInconclusive) {
  const Position p = new_position(Grid2(8).graph(), {}, {}, Player::Staller);
  auto s = make_strategy("pairing", p);
  CertifyConfig cfg;
  cfg.node_limit = 10;
  const CertificateReport r = certify_strategy(p, *s, 8, cfg);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
  EXPECT_FALSE(r.note.empty());
}

TEST(Certify, UnsoundDecompositionIsRefuted) {
  const Position p = new_position(make_path(5), {}, {}, Player::Dominator);
  CertifyConfig cfg;
  cfg.compose = true;
  const CertificateReport r = certify_strategy(p, LyingSplit(), 5, cfg);
  EXPECT_EQ(r.verdict, Verdict::Refuted);
  EXPECT_NE(r.note.find("unsound decomposition"), std::string::npos);
}

TEST(Certify, SkipModeForStallerStrategy) {
  // With skips allowed, Dominator's value can only improve, so the certified
  // lower bound is never above the plain solver value.
  for (int m = 2; m <= 5; ++m) {
    const Gadget g = build_gadget({GadgetKind::Rho, m});
    CertifyConfig cfg;
    cfg.allow_skip = true;
    const CertificateReport r = certify_strategy(g.position, *staller_rho_strategy(m), m, cfg);
    EXPECT_EQ(r.verdict, Verdict::Certified);
    EXPECT_EQ(oracle::naive_value(g.position, true), m) << m;
  }
}
