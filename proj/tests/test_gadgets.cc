#include <gtest/gtest.h>

#include <variant>

#include "bpm/gadget_models.h"
#include "bpm/gadgets.h"
#include "bpm/lemmas.h"

using namespace bpm;

TEST(GadgetLib, TowerCounts) {
  for (int h = 1; h <= 6; ++h) {
    BuiltGadget t = build_tower(h);
    EXPECT_EQ(t.graph.num_vertices(), 2 * h + 4);
    EXPECT_EQ(t.graph.num_edges(), 3 * h + 3);
    EXPECT_TRUE(std::holds_alternative<TwoColoring>(is_bipartite_certificate(t.graph)));
  }
  EXPECT_THROW(build_tower(0), ScaleInvalid);
}

TEST(GadgetLib, CityCounts) {
  for (int w = 1; w <= 3; ++w)
    for (int h = 1; h <= 4; ++h) {
      BuiltGadget c = build_city({w, h});
      EXPECT_EQ(c.graph.num_vertices(), w * (2 * h + 2) + 2);
      EXPECT_EQ(c.graph.num_edges(), w * (3 * h + 2) + 1);
      EXPECT_EQ(c.registry.of_kind(GadgetKind::kTower).size(), static_cast<size_t>(w));
    }
  EXPECT_THROW(build_city({0, 2}), ScaleInvalid);
}

TEST(GadgetLib, LadderCounts) {
  BuiltGadget l = build_ladder();
  EXPECT_EQ(l.graph.num_vertices(), 14);
  EXPECT_EQ(l.graph.num_edges(), 17);
}

TEST(GadgetLib, ForallStructure) {
  for (int t = 1; t <= 4; ++t) {
    BuiltGadget f = build_forall(t, {1, 1});
    EXPECT_EQ(f.registry.of_kind(GadgetKind::kLadder).size(), static_cast<size_t>(t));
    EXPECT_EQ(f.registry.of_kind(GadgetKind::kXor).size(), 3u);
    // Four own cities plus four in each XOR.
    EXPECT_EQ(f.registry.of_kind(GadgetKind::kCity).size(), 16u);
    EXPECT_EQ(children_of_kind(f.registry, f.root, GadgetKind::kLadder).size(),
              static_cast<size_t>(t));
    EXPECT_EQ(descendants_of_kind(f.registry, f.root, GadgetKind::kCity).size(), 16u);
    EXPECT_TRUE(std::holds_alternative<TwoColoring>(is_bipartite_certificate(f.graph)));
  }
  EXPECT_THROW(build_forall(0, {1, 1}), ScaleInvalid);
}

TEST(GadgetLib, XorInsertionKeepsBipartite) {
  GraphBuilder b;
  std::vector<VertexId> l, r;
  for (int i = 0; i < 3; ++i) l.push_back(b.add_vertex("l" + std::to_string(i), Side::kLeft));
  for (int i = 0; i < 3; ++i) r.push_back(b.add_vertex("r" + std::to_string(i), Side::kRight));
  for (VertexId x : l)
    for (VertexId y : r) b.add_edge(x, y);
  BipartiteGraph k33 = b.build_bipartite();
  for (bool mirror : {false, true}) {
    EdgeId e2 = mirror ? k33.edge_between(r[1], l[1]) : k33.edge_between(l[1], r[1]);
    BuiltGadget x = insert_xor(k33, k33.edge_between(l[0], r[0]), e2, {1, 1});
    EXPECT_TRUE(std::holds_alternative<TwoColoring>(is_bipartite_certificate(x.graph)));
    // 8 subdivision vertices, 4 cities of 4 inner vertices each.
    EXPECT_EQ(x.graph.num_vertices(), 6 + 8 + 4 * 4);
    EXPECT_EQ(x.graph.find_vertex("l0"), k33.find_vertex("l0"));
  }
  EXPECT_THROW(insert_xor(k33, 0, 0, {1, 1}), WrongGraph);
}

TEST(GadgetLib, TowerModelStates) {
  for (int h = 2; h <= 5; ++h) {
    TowerModel m(h);
    EXPECT_TRUE(m.semi_default(m.default_state()));
    EXPECT_TRUE(m.semi_default(m.locked_state()));
    EXPECT_NE(m.default_state(), m.locked_state());
    auto semis = m.semi_default_states();
    EXPECT_GE(semis.size(), 2u);
    auto r = min_well_behaved_sequence(m, m.locked_state(), m.default_state());
    EXPECT_EQ(r.length, 2 * h - 2);
  }
}

TEST(GadgetLib, TowerPlannerUsesExactly2h) {
  for (int h = 2; h <= 4; ++h) {
    TowerPlanner planner(h);
    const TowerModel& m = planner.model();
    auto plan = planner.plan(m.locked_state(), m.default_state());
    ASSERT_EQ(plan.size(), static_cast<size_t>(2 * h));
    std::vector<EdgeSet> cycles;
    for (const auto& s : plan) cycles.push_back(s.cycle);
    auto v = validate_flip_sequence(m.graph(), m.locked_state(), cycles);
    EXPECT_TRUE(v.ok);
    EXPECT_EQ(v.final_matching, m.default_state());
    for (const auto& s : plan) EXPECT_NE(s.direction, Direction::kNone);
  }
}

TEST(GadgetLib, LadderModelLabels) {
  LadderModel m;
  EXPECT_EQ(m.semi_default_states().size(), 8u);
  EXPECT_EQ(m.label(m.state(StateLabel::kDefault)), StateLabel::kDefault);
  EXPECT_EQ(m.label(m.state(StateLabel::kTopOpen)), StateLabel::kTopOpen);
  EXPECT_EQ(m.label(m.state(StateLabel::kBottomOpen)), StateLabel::kBottomOpen);
  auto tg = ladder_transfer_graph(m);
  auto plan = ladder_transfer_plan(m, tg, m.state(StateLabel::kTopOpen), m.state(StateLabel::kDefault));
  EXPECT_EQ(plan.directions, "tttt");
  plan = ladder_transfer_plan(m, tg, m.state(StateLabel::kBottomOpen), m.state(StateLabel::kDefault));
  EXPECT_EQ(plan.directions, "bbbb");
  plan = ladder_transfer_plan(m, tg, m.state(StateLabel::kDefault), m.state(StateLabel::kDefault));
  EXPECT_EQ(plan.steps.size(), 4u);
}

// Frozen results of the exhaustive checkers.

TEST(GadgetLemmas, Tower) {
  const int expected_pairs[] = {0, 0, 4, 9, 25};
  for (int h = 2; h <= 4; ++h) {
    auto r = verify_tower(h);
    SCOPED_TRACE(h);
    EXPECT_EQ(r.min_locked_to_default, 2 * h - 2);
    EXPECT_EQ(r.horizontal_violations, 0u);
    EXPECT_EQ(r.pairs_checked, expected_pairs[h]);
    EXPECT_EQ(r.pairs_valid, r.pairs_checked);
    EXPECT_EQ(r.flips_h_unchanged + r.flips_h_one, r.flips_explored);
    EXPECT_TRUE(r.pass());
  }
  EXPECT_EQ(verify_tower(3).states_explored, 8u);
}

TEST(GadgetLemmas, Ladder) {
  auto r = verify_ladder();
  EXPECT_EQ(r.semi_default_states, 8);
  EXPECT_EQ(r.transfer_diameter, 2);
  EXPECT_TRUE(r.labels_ok);
  EXPECT_EQ(r.min_bottom_to_default, 4);
  EXPECT_EQ(r.bottom_directions, std::set<std::string>{"bbbb"});
  EXPECT_EQ(r.min_top_to_default, 4);
  EXPECT_EQ(r.top_directions, std::set<std::string>{"tttt"});
  EXPECT_EQ(r.plans_valid, 64);
  EXPECT_TRUE(r.pass());
}

TEST(GadgetLemmas, XorBothOrientations) {
  for (bool mirrored : {false, true}) {
    auto r = verify_xor({1, 1}, mirrored);
    EXPECT_TRUE(r.bipartite);
    EXPECT_EQ(r.cycles, 755u);
    EXPECT_EQ(r.regular, 128u);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_FALSE(r.counterexample.has_value());
  }
  EXPECT_TRUE(verify_xor({1, 2}).pass());
}

TEST(GadgetLemmas, ForallTwoLadders) {
  auto r = verify_forall(2);
  EXPECT_TRUE(r.bipartite);
  EXPECT_EQ(r.regular, 40u);
  EXPECT_EQ(r.top, 20u);
  EXPECT_EQ(r.bottom, 20u);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.max_ladders_seen, 1);
  EXPECT_TRUE(r.boundary_ok);
  EXPECT_EQ(r.shared_ports, 4);
  EXPECT_EQ(r.min_port_edges, 2);
  EXPECT_EQ(r.port_capacity, 8);
  EXPECT_EQ(r.damage_bound, 2);
  EXPECT_TRUE(r.pass());
}

TEST(GadgetLemmas, DamageBoundSaturatesAtFour) {
  auto r = verify_forall(5);
  EXPECT_EQ(r.regular, 100u);
  EXPECT_EQ(r.damage_bound, 4);
  EXPECT_TRUE(r.pass());
}
