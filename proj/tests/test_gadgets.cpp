#include <gtest/gtest.h>

#include "mbd/gadgets.hpp"
#include "mbd/solver.hpp"
#include "oracle.hpp"

using namespace mbd;

TEST(Gadgets, RhoTwoIsFourCycle) {
  const Gadget g = build_gadget({GadgetKind::Rho, 2});
  EXPECT_EQ(g.position.graph().size(), 4);
  EXPECT_EQ(g.position.stall(), VertexSet::of({g.v(2)}));
  EXPECT_EQ(g.position.predom(), VertexSet::of({g.u(1)}));
  EXPECT_EQ(g.position.to_move(), Player::Dominator);
}

TEST(Gadgets, WOneHasPendantV0) {
  const Gadget g = build_gadget({GadgetKind::W, 1});
  EXPECT_EQ(g.position.graph().order(), 3);
  EXPECT_EQ(g.position.predom(), VertexSet::of({g.u(1), g.v0()}));
  EXPECT_TRUE(g.position.graph().adjacent(g.v(1), g.v0()));
  EXPECT_EQ(g.position.to_move(), Player::Staller);
}

TEST(Gadgets, ZOneIsAlreadyDominated) {
  const Gadget g = build_gadget({GadgetKind::Z, 1});
  EXPECT_EQ(g.position.graph().order(), 2);
  EXPECT_EQ(g.position.status().kind, StatusKind::DominatorWin);
  EXPECT_EQ(solve(g.position).value, GameValue::dominator_in(0));
}

TEST(Gadgets, StructuralRelations) {
  for (int m = 3; m <= 9; ++m) {
    const Gadget y = build_gadget({GadgetKind::Y, m});
    const Gadget rho = build_gadget({GadgetKind::Rho, m});
    EXPECT_EQ(y.position.graph(), rho.position.graph());
    EXPECT_EQ(y.position.stall(), rho.position.stall());
    EXPECT_EQ(y.position.predom() - rho.position.predom(), VertexSet::of({y.u(m), y.v(m)}));
    EXPECT_EQ(build_gadget({GadgetKind::W, m}).position.graph().order(),
              build_gadget({GadgetKind::Z, m}).position.graph().order() + 1);
    EXPECT_EQ(build_gadget({GadgetKind::X, m}).position.predom(), VertexSet::of({0}));
    EXPECT_EQ(build_gadget({GadgetKind::Z, m}).position.to_move(), Player::Staller);
  }
}

TEST(Gadgets, RangeValidation) {
  EXPECT_THROW(build_gadget({GadgetKind::Rho, 1}), std::invalid_argument);
  EXPECT_THROW(build_gadget({GadgetKind::Y, 2}), std::invalid_argument);
  EXPECT_THROW(build_gadget({GadgetKind::X, 0}), std::invalid_argument);
  EXPECT_THROW(build_gadget({GadgetKind::W4prime, 5}), std::invalid_argument);
  EXPECT_THROW(build_gadget({GadgetKind::X, 33}), std::invalid_argument);
}

TEST(Gadgets, ParseNames) {
  EXPECT_EQ(parse_gadget("rho:5"), (GadgetSpec{GadgetKind::Rho, 5}));
  EXPECT_EQ(parse_gadget("X:13"), (GadgetSpec{GadgetKind::X, 13}));
  EXPECT_EQ(parse_gadget("Wprime:6"), (GadgetSpec{GadgetKind::W6prime, 6}));
  EXPECT_EQ(parse_gadget("wprime:4"), (GadgetSpec{GadgetKind::W4prime, 4}));
  EXPECT_THROW(parse_gadget("rho"), std::invalid_argument);
  EXPECT_THROW(parse_gadget("rho:1"), std::invalid_argument);
  EXPECT_THROW(parse_gadget("Q:3"), std::invalid_argument);
  EXPECT_THROW(parse_gadget("X:3x"), std::invalid_argument);
  EXPECT_EQ(parse_gadget(GadgetSpec{GadgetKind::Z, 4}.name()), (GadgetSpec{GadgetKind::Z, 4}));
}

TEST(Gadgets, ExpectedValueTable) {
  EXPECT_EQ(gadget_expected_value({GadgetKind::Rho, 5}), GameValue::dominator_in(5));
  EXPECT_EQ(gadget_expected_value({GadgetKind::X, 6}), GameValue::dominator_in(4));
  EXPECT_EQ(gadget_expected_value({GadgetKind::W, 3}), GameValue::dominator_in(3));
  const int x[] = {1, 1, 2, 3, 4, 4};
  for (int m = 1; m <= 6; ++m) EXPECT_EQ(gadget_expected_value({GadgetKind::X, m}).claims(), x[m - 1]);
}

// Small gadgets checked against plain minimax, independent of the solver.
TEST(Gadgets, SmallValuesAgreeWithNaiveMinimax) {
  const GadgetKind kinds[] = {GadgetKind::X, GadgetKind::Y, GadgetKind::Z, GadgetKind::W, GadgetKind::Rho};
  for (GadgetKind k : kinds) {
    for (int m = 1; m <= 4; ++m) {
      GadgetSpec spec{k, m};
      try {
        spec.validate();
      } catch (const std::invalid_argument&) {
        continue;
      }
      const Gadget g = build_gadget(spec);
      if (g.position.graph().order() > 9) continue;
      EXPECT_EQ(oracle::naive_value(g.position), gadget_expected_value(spec).claims()) << spec.name();
    }
  }
}

TEST(Gadgets, PrimedOpenings) {
  const Gadget w4 = build_gadget({GadgetKind::W4prime, 4});
  EXPECT_TRUE(w4.dominator_skips_first);
  for (const Position& p : w4.opening_positions()) {
    EXPECT_EQ(p.stall().size(), 1);
    EXPECT_FALSE(p.stall().intersects(w4.excluded_first));
    EXPECT_EQ(p.to_move(), Player::Staller);
  }
  const Gadget w6 = build_gadget({GadgetKind::W6prime, 6});
  EXPECT_EQ(w6.opening_positions().size(), 1u);
  EXPECT_EQ(w6.position.stall(), VertexSet::of({w6.v(2)}));
}
