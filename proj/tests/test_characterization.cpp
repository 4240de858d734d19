#include <gtest/gtest.h>

#include "mbd/certify.hpp"
#include "mbd/characterization.hpp"
#include "oracle.hpp"

#include <set>

using namespace mbd;

namespace {

CalGSpec spec(const std::string& text) { return parse_calG_spec(text); }

// Lemma counts read straight off the oracle's γ-set enumeration.
void expect_lemma(const CalGSpec& s) {
  const Graph g = build_calG(s);
  const auto sets = oracle::naive_gamma_sets(g);
  const int k = s.k;
  ASSERT_EQ(static_cast<int>(sets.size()), 1 << (k - 1)) << s.to_string();
  for (auto m : sets) {
    EXPECT_TRUE((m >> calG_a()) & 1);
    EXPECT_EQ(__builtin_popcountll(m), k);
  }
  for (int i = 2; i <= k; ++i) {
    int nb = 0, nc = 0;
    for (auto m : sets) {
      const bool b = (m >> calG_b(i)) & 1, c = (m >> calG_c(i)) & 1;
      EXPECT_FALSE(b && c);
      nb += b;
      nc += c;
    }
    EXPECT_EQ(nb, 1 << (k - 2));
    EXPECT_EQ(nc, 1 << (k - 2));
  }
}

}  // namespace

TEST(CalGSpec, ParseAndPrint) {
  const CalGSpec s = spec("k=3,a1=2,ai=2,1,cases=1,4:2:2");
  EXPECT_EQ(s.k, 3);
  EXPECT_EQ(s.a1_size, 2);
  EXPECT_EQ(s.ai_sizes, (std::vector<int>{2, 1}));
  EXPECT_EQ(s.cases[1].kind, CalGCase::Cross);
  EXPECT_EQ(parse_calG_spec(s.to_string()).to_string(), s.to_string());
  EXPECT_EQ(spec("k=3,cases=3,3c").cases[0].j, 3);
  EXPECT_EQ(spec("k=3,cases=3,3c").cases[1].j, 2);
}

TEST(CalGSpec, RejectsBadSpecs) {
  EXPECT_THROW(spec("k=1"), std::invalid_argument);
  EXPECT_THROW(spec("a1=2"), std::invalid_argument);
  EXPECT_THROW(spec("k=2,cases=3"), std::invalid_argument);  // no partner pair exists
  EXPECT_THROW(spec("k=3,cases=4:3:3,4:3:3"), std::invalid_argument);  // partner equals i
  EXPECT_THROW(spec("k=3,ai=1"), std::invalid_argument);
  EXPECT_THROW(spec("k=3,zz=1"), std::invalid_argument);
  EXPECT_THROW(spec("k=2,cases=7"), std::invalid_argument);
}

TEST(CalG, RawShape) {
  const Graph g = calG_graph(spec("k=2,a1=1,ai=1,cases=1"));
  EXPECT_EQ(g.order(), 5);
  EXPECT_TRUE(g.adjacent(calG_b(2), calG_c(2)));
  EXPECT_EQ(g.degree(calG_a()), 1);
  EXPECT_EQ(g.label(calG_b(2)), "b2");
}

TEST(CalG, SmallestInstances) {
  const Graph g = build_calG(spec("k=2,a1=2,ai=2,cases=1"));
  EXPECT_EQ(domination_number(g), 2);
  EXPECT_EQ(gamma_set_count(g), 2);
  EXPECT_EQ(gamma_mb(g), GameValue::dominator_in(2));
  EXPECT_TRUE(has_vertex_in_two_gamma_sets(g));
  EXPECT_EQ(gamma_set_count(build_calG(spec("k=3,a1=2,ai=2,2,cases=1,2"))), 4);
  EXPECT_EQ(gamma_set_count(build_calG(spec("k=4,a1=2,ai=2,2,2,cases=2,3b,4"))), 8);
}

TEST(CalG, SingletonAttachmentBreaksThePremise) {
  // The lone vertex of A_2 dominates b_2, c_2 and itself, so it joins a γ-set.
  const CalGSpec s = spec("k=2,a1=2,ai=1,cases=1");
  const StructureCheck c = is_calG_structure(calG_graph(s));
  EXPECT_FALSE(c.ok);
  EXPECT_NE(c.diagnosis.find("γ-sets cover"), std::string::npos);
  EXPECT_THROW(build_calG(s), std::invalid_argument);
  EXPECT_EQ(gamma_set_count(calG_graph(s)), 3);
}

TEST(CalG, CheckerRecoversRoles) {
  const CalGSpec s = spec("k=3,a1=2,ai=2,2,cases=3c,4");
  const StructureCheck c = is_calG_structure(build_calG(s));
  ASSERT_TRUE(c.ok) << c.diagnosis;
  EXPECT_EQ(c.k, 3);
  EXPECT_EQ(c.a, calG_a());
  ASSERT_EQ(c.pairs.size(), 2u);
  EXPECT_EQ(c.pairs[0], std::make_pair(calG_b(2), calG_c(2)));
  EXPECT_EQ(c.attachments.size(), 3u);
  EXPECT_EQ(c.attachments[0].size(), 2);
}

TEST(CalG, CheckerRejections) {
  const StructureCheck c6 = is_calG_structure(make_cycle(6));
  EXPECT_FALSE(c6.ok);
  EXPECT_FALSE(c6.diagnosis.empty());
  const Graph k14(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const StructureCheck s = is_calG_structure(k14);
  EXPECT_FALSE(s.ok);
  EXPECT_NE(s.diagnosis.find("below 2"), std::string::npos);
  // Without the case edge c_2 needs its own dominator and the γ-sets change.
  Graph g = build_calG(spec("k=2,a1=2,ai=2,cases=1"));
  auto edges = g.edges();
  edges.erase(std::find(edges.begin(), edges.end(), std::make_pair(calG_b(2), calG_c(2))));
  const StructureCheck cut = is_calG_structure(Graph(g.order(), edges, g.labels()));
  EXPECT_FALSE(cut.ok);
  EXPECT_FALSE(cut.diagnosis.empty());
}

TEST(CalG, LemmaOnGridSample) {
  int checked = 0;
  const auto grid = calG_spec_grid();
  for (std::size_t i = 0; i < grid.size(); i += 7) {
    if (!is_calG_structure(calG_graph(grid[i])).ok) continue;
    expect_lemma(grid[i]);
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(CalG, SufficiencyStrategyCertified) {
  for (const char* t : {"k=2,a1=2,ai=2,cases=2", "k=3,a1=2,ai=2,2,cases=1,3b", "k=4,a1=2,ai=2,2,2,cases=4:3:4,2,3c"}) {
    const CalGSpec s = spec(t);
    const Position p = new_position(build_calG(s), {}, {}, Player::Dominator);
    auto strat = calG_strategy(s);
    EXPECT_EQ(strat->choose(p, std::nullopt), Move::claim(calG_a()));
    const CertificateReport r = certify_strategy(p, *strat, s.k);
    EXPECT_EQ(r.verdict, Verdict::Certified) << t;
    EXPECT_EQ(r.worst, GameValue::dominator_in(s.k));
  }
}

TEST(CalG, GridCoversEveryCase) {
  std::set<CalGCase> seen;
  bool cross_distinct = false;
  for (const CalGSpec& s : calG_spec_grid()) {
    for (const auto& c : s.cases) {
      seen.insert(c.kind);
      cross_distinct = cross_distinct || (c.kind == CalGCase::Cross && c.j != c.l);
    }
  }
  EXPECT_EQ(seen.size(), 5u);
  EXPECT_TRUE(cross_distinct);
}

TEST(GammaSets, CountsMatchOracle) {
  EXPECT_EQ(gamma_set_count(make_path(4)), static_cast<int>(oracle::naive_gamma_sets(make_path(4)).size()));
  EXPECT_EQ(gamma_set_count(make_cycle(6)), 3);
}

TEST(GammaSets, TwoSetsCriterion) {
  // P_4: γ-sets {0,2}, {0,3}, {1,2}, {1,3}; every vertex is in two of them.
  const auto p4 = oracle::naive_gamma_sets(make_path(4));
  bool oracle_says = false;
  for (int v = 0; v < 4; ++v) {
    int hits = 0;
    for (auto m : p4) hits += (m >> v) & 1;
    oracle_says = oracle_says || hits >= 2;
  }
  EXPECT_EQ(has_vertex_in_two_gamma_sets(make_path(4)), oracle_says);
  // Two cherries joined leaf to leaf: the centres form the only γ-set.
  const Graph unique(6, {{0, 1}, {0, 2}, {3, 4}, {3, 5}, {2, 5}});
  EXPECT_EQ(gamma_set_count(unique), 1);
  EXPECT_FALSE(has_vertex_in_two_gamma_sets(unique));
  EXPECT_THROW(has_vertex_in_two_gamma_sets(make_path(7)), std::domain_error);
}

TEST(Theorem1, Verdicts) {
  const CalGSpec s = spec("k=2,a1=2,ai=2,cases=1");
  const Theorem1Verdict v = theorem1_check(build_calG(s));
  EXPECT_EQ(v.kind, Theorem1Kind::Consistent);
  EXPECT_TRUE(v.structure);
  EXPECT_EQ(v.gamma, 2);
  EXPECT_EQ(*v.gamma_mb, GameValue::dominator_in(2));

  const Theorem1Verdict k2 = theorem1_check(make_complete(2));
  EXPECT_EQ(k2.kind, Theorem1Kind::Untestable);
  EXPECT_EQ(to_string(k2.kind), "untestable(containment)");

  // A spanning supergraph of a k = 3 instance with γ unchanged.
  const CalGSpec s3 = spec("k=3,a1=2,ai=2,2,cases=1,1");
  Graph base = build_calG(s3);
  auto edges = base.edges();
  edges.emplace_back(calG_b(2), calG_b(3));
  const Graph sup(base.order(), edges);
  ASSERT_EQ(domination_number(sup), 3);
  const Theorem1Verdict e = theorem1_check(sup, s3);
  EXPECT_EQ(e.kind, Theorem1Kind::Consistent) << e.reason;
  EXPECT_EQ(*e.gamma_mb, GameValue::dominator_in(3));

  // γ = 3 without a known embedding: nothing to compare against.
  const Theorem1Verdict p7 = theorem1_check(make_path(7));
  EXPECT_EQ(p7.gamma, 3);
  EXPECT_EQ(p7.kind, Theorem1Kind::Untestable);
}

TEST(Corpus, SamplerIsDeterministic) {
  const Graph a = sample_connected_graph(99, 4, 8, 2);
  const Graph b = sample_connected_graph(99, 4, 8, 2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(domination_number(a), 2);
  EXPECT_LE(a.order(), 8);
}

TEST(Corpus, SeedListAgreesWithCriterion) {
  const auto seeds = read_seed_list(MBD_DATA_DIR "/k2_corpus_seeds.txt");
  ASSERT_GE(seeds.size(), 200u);
  const auto rows = k2_corpus_check(seeds, 4);
  int wins = 0;
  for (const auto& r : rows) {
    EXPECT_TRUE(r.agree) << r.seed;
    // Independent check of the criterion through the oracle enumeration.
    const auto sets = oracle::naive_gamma_sets(r.graph);
    bool two = false;
    for (int v = 0; v < r.graph.order(); ++v) {
      int hits = 0;
      for (auto m : sets) hits += (m >> v) & 1;
      two = two || hits >= 2;
    }
    EXPECT_EQ(two, r.two_sets);
    wins += r.gamma_mb == GameValue::dominator_in(2);
  }
  EXPECT_GT(wins, 0);
  EXPECT_LT(wins, static_cast<int>(rows.size()));
}
