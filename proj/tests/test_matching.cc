#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "bpm/instances.h"
#include "bpm/matching.h"

using namespace bpm;

namespace {

std::vector<EdgeSet> sorted_sets(const std::vector<PerfectMatching>& ms) {
  std::vector<EdgeSet> out;
  for (const auto& m : ms) out.push_back(m.edges);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(MatchingEngine, EnumerationCounts) {
  std::map<std::string, size_t> expected{{"C4", 2},       {"C6", 2},       {"K33", 6},
                                         {"K44", 24},     {"two-C4", 4},   {"three-C4", 8},
                                         {"grid2x4", 5},  {"grid4x4", 36}, {"grid3x6", 41}};
  for (const auto& ng : test_graph_gallery()) {
    auto it = expected.find(ng.name);
    if (it == expected.end()) continue;
    SCOPED_TRACE(ng.name);
    auto all = enumerate_perfect_matchings(ng.graph);
    EXPECT_EQ(all.size(), it->second);
    for (const auto& m : all) EXPECT_TRUE(is_perfect_matching(ng.graph, m.edges));
  }
}

TEST(MatchingEngine, CapAndEmpty) {
  EXPECT_THROW(enumerate_perfect_matchings(complete_bipartite(4, 4), 10), CapExceeded);
  BipartiteGraph unbalanced = complete_bipartite(2, 3);
  EXPECT_TRUE(enumerate_perfect_matchings(unbalanced).empty());
  EXPECT_THROW(polytope_diameter(unbalanced), NoPerfectMatching);
}

TEST(MatchingEngine, MakeMatchingChecksPerfection) {
  BipartiteGraph c4 = even_cycle(4);
  EXPECT_THROW(make_matching(c4, {0}), NotPerfect);
  EXPECT_THROW(make_matching(c4, {0, 1}), NotPerfect);  // shares a vertex
  auto m = make_matching(c4, {2, 0});
  EXPECT_EQ(m.edges, (EdgeSet{0, 2}));
  EXPECT_EQ(m.graph_hash, c4.content_hash());
}

TEST(MatchingEngine, SymmetricDifferenceDecomposes) {
  BipartiteGraph g = disjoint_union(even_cycle(4), even_cycle(6));
  auto all = enumerate_perfect_matchings(g);
  ASSERT_EQ(all.size(), 4u);
  auto cycles = decompose_symmetric_difference(g, all.front(), all.back());
  ASSERT_EQ(cycles.size(), 2u);
  EXPECT_EQ(cycles[0].edges.size() + cycles[1].edges.size(), 10u);
  EXPECT_FALSE(is_adjacent(g, all.front(), all.back()));
  PerfectMatching cur = all.front();
  for (const auto& c : cycles) cur = flip(cur, c.edges);
  EXPECT_EQ(cur, all.back());
}

// The streaming generator must agree with the pairwise test on every
// matching of every small graph.
TEST(MatchingEngine, StreamingNeighboursEqualPairwise) {
  size_t checked = 0;
  for (const auto& ng : test_graph_gallery()) {
    SCOPED_TRACE(ng.name);
    auto all = enumerate_perfect_matchings(ng.graph);
    for (const auto& m : all) {
      EXPECT_EQ(sorted_sets(alternating_cycle_neighbors(ng.graph, m)),
                sorted_sets(pairwise_neighbors(ng.graph, m, all)));
      ++checked;
    }
  }
  EXPECT_GT(checked, 400u);
}

TEST(MatchingEngine, AlternatingCyclesAreDistinctAndAlternating) {
  BipartiteGraph g = grid_graph(4, 4);
  auto all = enumerate_perfect_matchings(g);
  for (const auto& m : all) {
    std::vector<EdgeSet> seen;
    for_each_alternating_cycle(g, m, [&](const EdgeSet& c) {
      seen.push_back(c);
      EXPECT_TRUE(cycle_vertex_order(g, c).has_value());
      EXPECT_TRUE(is_perfect_matching(g, flip(m, c).edges));
      return true;
    });
    auto sorted = seen;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  }
}

TEST(MatchingEngine, ExactDiameters) {
  EXPECT_EQ(polytope_diameter(even_cycle(4)).diameter, 1);
  EXPECT_EQ(polytope_diameter(even_cycle(6)).diameter, 1);
  EXPECT_EQ(polytope_diameter(complete_bipartite(3, 3)).diameter, 1);
  auto two = polytope_diameter(disjoint_union(even_cycle(4), even_cycle(4)));
  EXPECT_EQ(two.diameter, 2);
  EXPECT_EQ(two.circuit_diameter, 2);
  EXPECT_EQ(two.witness.length(), 2);
  auto v = validate_flip_sequence(disjoint_union(even_cycle(4), even_cycle(4)), two.witness);
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.final_matching, two.witness_to);
  EXPECT_EQ(polytope_diameter(disjoint_union(disjoint_union(even_cycle(4), even_cycle(4)),
                                             even_cycle(4)))
                .diameter,
            3);
  EXPECT_EQ(polytope_diameter(complete_bipartite(4, 4)).diameter, 2);
  EXPECT_EQ(polytope_diameter(grid_graph(3, 6)).diameter, 3);
}

TEST(MatchingEngine, WorkersDoNotChangeAnswers) {
  for (const auto& ng : test_graph_gallery()) {
    SCOPED_TRACE(ng.name);
    auto one = polytope_diameter(ng.graph, {kDefaultMatchingCap, 1});
    auto four = polytope_diameter(ng.graph, {kDefaultMatchingCap, 4});
    EXPECT_EQ(one.diameter, four.diameter);
    EXPECT_EQ(one.witness_from, four.witness_from);
    EXPECT_EQ(one.witness_to, four.witness_to);
  }
}

TEST(MatchingEngine, FlipDistanceMatchesSymmetricDifference) {
  BipartiteGraph g = disjoint_union(even_cycle(4), even_cycle(6));
  auto all = enumerate_perfect_matchings(g);
  for (const auto& a : all)
    for (const auto& b : all) {
      auto r = flip_distance(g, a, b);
      EXPECT_EQ(r.distance, static_cast<int>(decompose_symmetric_difference(g, a, b).size()));
      EXPECT_TRUE(validate_flip_sequence(g, r.witness).ok);
    }
  EXPECT_THROW(flip_distance(grid_graph(4, 4), enumerate_perfect_matchings(grid_graph(4, 4))[0],
                             enumerate_perfect_matchings(grid_graph(4, 4))[35], 2),
               BudgetExceeded);
}

TEST(MatchingEngine, ValidationNamesTheViolation) {
  BipartiteGraph g = grid_graph(2, 4);
  auto all = enumerate_perfect_matchings(g);
  const PerfectMatching& m = all[0];
  // Not a cycle: a single edge.
  auto r1 = validate_flip_sequence(g, m, {EdgeSet{0}});
  EXPECT_FALSE(r1.ok);
  EXPECT_EQ(r1.violation, Violation::kNotACycle);
  EXPECT_EQ(r1.failed_index, 0);
  // The outer 8-cycle alternates for exactly one of the two outer-rung matchings.
  EdgeSet outer;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = std::pair{g.edge(e).u, g.edge(e).v};
    bool inner_rung = v == u + 4 && (u == 1 || u == 2);
    if (!inner_rung) outer.push_back(e);
  }
  outer = make_edge_set(outer);
  int alternating = 0, rejected = 0;
  for (const auto& x : all) {
    auto r = validate_flip_sequence(g, x, {outer});
    if (r.ok) {
      ++alternating;
    } else {
      ++rejected;
      EXPECT_EQ(r.violation, Violation::kNotAlternating);
    }
  }
  EXPECT_GT(alternating, 0);
  EXPECT_GT(rejected, 0);
  EXPECT_STREQ(violation_name(Violation::kNone), "none");
}

TEST(MatchingEngine, RandomMatchingsArePerfectAndSeeded) {
  BipartiteGraph g = random_bipartite(2, 10, 0.3);
  std::mt19937_64 a(5), b(5);
  auto m1 = random_perfect_matching(g, a, 20), m2 = random_perfect_matching(g, b, 20);
  ASSERT_TRUE(m1.has_value());
  EXPECT_TRUE(is_perfect_matching(g, m1->edges));
  EXPECT_EQ(*m1, *m2);
  std::mt19937_64 c(1);
  EXPECT_FALSE(random_perfect_matching(complete_bipartite(2, 3), c, 3).has_value());
}
