#include <gtest/gtest.h>

#include <random>
#include <variant>

#include "bpm/gadgets.h"
#include "bpm/oracles.h"
#include "bpm/reduction.h"
#include "bpm/roundtrip.h"

using namespace bpm;

namespace {

HamInstance k4_one_pair() { return near_complete_instance(4, {{1, 2}}); }

Graph undirected_cycle(int n) {
  std::vector<VertexSpec> vs;
  std::vector<std::pair<VertexId, VertexId>> es;
  for (int i = 0; i < n; ++i) {
    vs.push_back({std::to_string(i), Side::kNone, {}});
    es.emplace_back(i, (i + 1) % n);
  }
  return Graph::build(vs, es);
}

}  // namespace

TEST(ScaleProfile, ParseAndValidate) {
  auto p = ScaleProfile::parse("4,2,3");
  EXPECT_EQ(p.city_height, 4);
  EXPECT_EQ(p.ladders, 2);
  EXPECT_EQ(p.city_width, 3);
  EXPECT_NO_THROW(p.validate(true));
  EXPECT_THROW(ScaleProfile::parse("4,2"), ProfileInvalid);
  EXPECT_THROW(ScaleProfile::parse("4,x,1"), ProfileInvalid);
  EXPECT_THROW(ScaleProfile::parse("0,1,1").validate(false), ProfileInvalid);
  EXPECT_THROW(ScaleProfile::parse("3,1,1").validate(true), ProfileMismatch);
  EXPECT_NO_THROW(ScaleProfile::parse("3,1,1").validate(false));
  EXPECT_EQ(ScaleProfile::desk(3).city_height, 6);
}

TEST(ScaleProfile, PaperProfileIsCensusOnly) {
  auto p = ScaleProfile::parse("paper:4");
  EXPECT_EQ(p.kind, ScaleProfile::Kind::kPaper);
  EXPECT_EQ(p.city_height, 2 * 256);
  EXPECT_EQ(p.ladders, 256);
  EXPECT_EQ(p.city_width, 4 * 256 + 400);
  EXPECT_NE(p.describe().find("census only"), std::string::npos);
  EXPECT_NE(ScaleProfile::desk(1).describe().find("no hardness guarantee"), std::string::npos);
  HamInstance inst = k4_one_pair();
  GhCensus c = gh_census_formula(inst, p);
  EXPECT_EQ(c.cities, 20);
  EXPECT_GT(c.vertices, kMaxBuildVertices);
  EXPECT_THROW(build_GH(inst, p), InfeasibleScale);
  EXPECT_THROW(gh_census_formula(inst, ScaleProfile::paper(100000)), InfeasibleScale);
}

TEST(GhGraph, CensusMatchesFormulaOnCorpus) {
  for (const auto& e : desk_corpus()) {
    for (int t = 1; t <= 2; ++t) {
      SCOPED_TRACE(e.name + " t=" + std::to_string(t));
      auto p = ScaleProfile::desk(t);
      GhGraph gh = build_GH(e.instance, p);
      GhCensus c = census(gh), f = gh_census_formula(e.instance, p);
      EXPECT_EQ(c.vertices, gh.graph.num_vertices());
      EXPECT_EQ(c.vertices, f.vertices);
      EXPECT_EQ(c.edges, f.edges);
      EXPECT_EQ(c.cities, e.instance.n() + 16 * e.instance.k());
      EXPECT_EQ(c.v_s, e.instance.n() + 22 * e.instance.k());
      EXPECT_EQ(c.ladders, t * e.instance.k());
      EXPECT_EQ(static_cast<int64_t>(gh.semi_default_vertices.size()), c.v_s);
      EXPECT_TRUE(std::holds_alternative<TwoColoring>(is_bipartite_certificate(gh.graph)));
    }
  }
}

TEST(GhGraph, FrozenSizes) {
  GhGraph gh = build_GH(k4_one_pair(), ScaleProfile::desk(1));
  EXPECT_EQ(gh.graph.num_vertices(), 172);
  EXPECT_EQ(gh.graph.num_edges(), 241);
  GhGraph gh2 = build_GH(k4_one_pair(), ScaleProfile::desk(2));
  EXPECT_EQ(gh2.graph.num_vertices(), 262);
  EXPECT_EQ(gh2.graph.num_edges(), 378);
}

TEST(GhGraph, SpecialMatchingsAreSemiDefault) {
  HamInstance inst = near_complete_instance(5, {{2, 3}, {4, 0}});
  GhGraph gh = build_GH(inst, ScaleProfile::desk(1));
  PerfectMatching d = default_matching(gh);
  EXPECT_TRUE(is_perfect_matching(gh.graph, d.edges));
  EXPECT_TRUE(is_semi_default(gh.graph, gh.registry, d));
  for (uint64_t b = 0; b < 4; ++b) {
    PerfectMatching m = pattern_matching(gh, pattern_from_index(2, b));
    EXPECT_TRUE(is_perfect_matching(gh.graph, m.edges));
    EXPECT_TRUE(is_semi_default(gh.graph, gh.registry, m));
    for (int t : gh.registry.of_kind(GadgetKind::kTower))
      EXPECT_EQ(classify_state(gh.graph, gh.registry, t, m).label, StateLabel::kLocked);
    for (size_t i = 0; i < gh.forall.size(); ++i)
      for (int l : children_of_kind(gh.registry, gh.forall[i], GadgetKind::kLadder))
        EXPECT_EQ(classify_state(gh.graph, gh.registry, l, m).label,
                  (b >> i & 1) ? StateLabel::kTopOpen : StateLabel::kBottomOpen);
  }
}

TEST(GhGraph, ProjectionOfRandomMatchings) {
  std::mt19937_64 rng(2024);
  for (const auto& e : desk_corpus()) {
    GhGraph gh = build_GH(e.instance, ScaleProfile::desk(1));
    PerfectMatching d = default_matching(gh);
    for (int trial = 0; trial < 3; ++trial) {
      auto m = random_perfect_matching(gh.graph, rng, 200);
      ASSERT_TRUE(m.has_value());
      Projection p = semi_default_projection(gh, *m);
      EXPECT_LE(p.sequence.length(), e.instance.n() + 22 * e.instance.k());
      auto v = validate_flip_sequence(gh.graph, p.sequence);
      EXPECT_TRUE(v.ok);
      EXPECT_EQ(v.final_matching, p.result);
      EXPECT_TRUE(is_semi_default(gh.graph, gh.registry, p.result));
    }
  }
}

TEST(GhGraph, SynthesisAndExtraction) {
  HamInstance inst = k4_one_pair();
  for (int t = 1; t <= 2; ++t) {
    GhGraph gh = build_GH(inst, ScaleProfile::desk(t));
    PerfectMatching d = default_matching(gh);
    for (uint64_t b = 0; b < 2; ++b) {
      Pattern p = pattern_from_index(1, b);
      Synthesis s = synthesize_flip_sequence(gh, pattern_matching(gh, p), d, oracle_provider(inst));
      ASSERT_EQ(s.sequence.length(), 4 * t);
      EXPECT_EQ(s.demand[0], std::string(4 * t, b ? 't' : 'b'));
      for (const auto& c : s.sequence.cycles) {
        EXPECT_TRUE(is_regular(gh.graph, gh.registry, c));
        Extraction ex = extract_ham_cycle(gh, c);
        EXPECT_EQ(ex.pattern, p);
        EXPECT_TRUE(respects_pattern(inst, ex.route, p));
        EXPECT_EQ(ex.route[0], 0);
      }
      auto rc = regularity_census(gh.graph, gh.registry, s.sequence);
      EXPECT_EQ(rc.irregular, 0);
      EXPECT_TRUE(rc.locked_to_default);
      EXPECT_TRUE(rc.under_visited.empty());
    }
    EXPECT_THROW(synthesize_flip_sequence(gh, d, d, [](const Pattern&) {
                   return std::optional<std::vector<int>>{};
                 }),
                 HamProviderFailed);
  }
}

TEST(GhGraph, ExtractionRejectsIrregularCycles) {
  GhGraph gh = build_GH(k4_one_pair(), ScaleProfile::desk(1));
  int tower = gh.registry.of_kind(GadgetKind::kTower)[0];
  const auto& h = gh.registry.at(tower);
  // The square a_0 b_0 b_1 a_1 stays inside one tower.
  std::vector<VertexId> sq{h.role("a_0"), h.role("b_0"), h.role("b_1"), h.role("a_1")};
  EdgeSet c = edges_of_closed_walk(gh.graph, sq);
  EXPECT_FALSE(is_regular(gh.graph, gh.registry, c));
  EXPECT_THROW(extract_ham_cycle(gh, c), NotRegular);
  EXPECT_THROW(extract_ham_cycle(gh, EdgeSet{0, 1}), NotRegular);
}

TEST(GhGraph, SynthesisRequiresMatchingProfile) {
  HamInstance inst = k4_one_pair();
  GhGraph gh = build_GH(inst, ScaleProfile::parse("3,1,1"));
  PerfectMatching d = default_matching(gh);
  EXPECT_THROW(synthesize_flip_sequence(gh, d, d, oracle_provider(inst)), ProfileMismatch);
}

TEST(RoundTrip, DeskCorpus) {
  for (const auto& e : desk_corpus()) {
    SCOPED_TRACE(e.name);
    RoundTripReport r = run_roundtrip(e.instance, ScaleProfile::desk(1));
    EXPECT_EQ(r.oracle_yes, e.expected_yes);
    EXPECT_TRUE(r.pass());
    for (const auto& run : r.runs) {
      if (run.oracle_has_cycle) {
        EXPECT_EQ(run.length, 4);
        EXPECT_EQ(run.extracted_ok, 4);
      } else {
        ASSERT_TRUE(run.provider_failed.has_value());
        EXPECT_EQ(*run.provider_failed, run.pattern);
      }
    }
  }
}

TEST(RoundTrip, WiderProfile) {
  RoundTripReport r = run_roundtrip(near_complete_instance(5, {{2, 3}, {4, 0}}),
                                    ScaleProfile::desk(2, 2));
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.expected_length, 8);
}

TEST(Folklore, SizesAndAgreement) {
  int checked = 0;
  for (uint64_t seed = 1; seed <= 12; ++seed) {
    CnfFormula f = random_cnf(seed, 3 + seed % 2, 3 + seed % 3);
    FolkloreGraph fg = build_folklore_hc(f);
    EXPECT_EQ(fg.graph.num_vertices(), folklore_vertex_count(f));
    EXPECT_LE(fg.graph.num_vertices(), 60 * static_cast<int64_t>(f.clauses.size()) + 3);
    EXPECT_EQ(ham_cycle_undirected(fg.graph).has_value(), cnf_brute_force(f).satisfiable)
        << to_dimacs(f);
    ++checked;
  }
  EXPECT_EQ(checked, 12);
  CnfFormula unsat = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
  EXPECT_FALSE(ham_cycle_undirected(build_folklore_hc(unsat).graph).has_value());
  CnfFormula wide = parse_dimacs("p cnf 4 1\n1 2 3 4 0\n");
  EXPECT_THROW(build_folklore_hc(wide), ClauseTooLarge);
}

TEST(Inapprox, CycleOfFour) {
  Graph c4 = undirected_cycle(4);
  InapproxGraph g = build_inapprox_G(c4, CityScale{1, 2});
  EXPECT_EQ(g.graph.num_vertices(), 32);
  EXPECT_EQ(g.city.size(), 4u);
  PerfectMatching m1 = inapprox_locked_matching(g), m2 = inapprox_default_matching(g);
  EXPECT_TRUE(is_semi_default(g.graph, g.registry, m1));
  FlipSequence s = synthesize_inapprox_sequence(g, m1, m2, {0, 1, 2, 3});
  EXPECT_EQ(s.length(), 4);
  auto v = validate_flip_sequence(g.graph, s);
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.final_matching, m2);
  for (const auto& c : s.cycles) {
    WalkRecord w = extract_walk(g, c);
    EXPECT_EQ(w.w1(), 4);
    EXPECT_TRUE(eps_good_check(w, Rational(0), 4).good);
  }
  EXPECT_THROW(synthesize_inapprox_sequence(g, m1, m2, {0, 2, 1, 3}), NotHamiltonian);
  Projection p = inapprox_projection(g, m1);
  EXPECT_EQ(p.sequence.length(), 0);
}

TEST(Inapprox, Constants) {
  auto e = epsilon_constants();
  EXPECT_EQ(e.eps1, Rational(1, 19));
  EXPECT_EQ(e.d, 13);
  EXPECT_EQ(e.eps2, Rational(1, 16226));
  EXPECT_EQ(e.eps, Rational(1, 16226));
  EXPECT_EQ(inapprox_paper_scale(3).height, 9);
  EXPECT_EQ(inapprox_paper_scale(3).width, 4 * 9 + 12);
}
