#include <gtest/gtest.h>

#include <variant>

#include "bpm/builder.h"
#include "bpm/graph.h"
#include "bpm/graph_io.h"
#include "bpm/instances.h"

using namespace bpm;

namespace {

Graph triangle() {
  return Graph::build({{"a", Side::kNone, {}}, {"b", Side::kNone, {}}, {"c", Side::kNone, {}}},
                      {{0, 1}, {1, 2}, {2, 0}});
}

}  // namespace

TEST(GraphCore, RejectsLoopsAndParallelEdges) {
  std::vector<VertexSpec> vs{{"a", Side::kLeft, {}}, {"b", Side::kRight, {}}};
  EXPECT_THROW(Graph::build(vs, {{0, 1}, {1, 0}}), DuplicateEdge);
  EXPECT_THROW(Graph::build(vs, {{0, 0}}), Error);
  EXPECT_THROW(Graph::build(vs, {{0, 2}}), DanglingEndpoint);
}

TEST(GraphCore, IncidenceSortedByNeighbour) {
  BipartiteGraph k = complete_bipartite(3, 3);
  for (VertexId v = 0; v < k.num_vertices(); ++v) {
    VertexId last = -1;
    for (EdgeId e : k.incident(v)) {
      EXPECT_GT(k.edge(e).other(v), last);
      last = k.edge(e).other(v);
    }
    EXPECT_EQ(k.degree(v), 3);
  }
  EXPECT_EQ(k.edge_between(0, 4), *k.find_edge(4, 0));
  EXPECT_THROW(k.edge_between(0, 1), EdgeNotFound);
  EXPECT_EQ(*k.find_vertex("r2"), 5);
}

TEST(GraphCore, BipartiteLabelsChecked) {
  std::vector<VertexSpec> vs{{"a", Side::kLeft, {}}, {"b", Side::kLeft, {}}};
  EXPECT_THROW(BipartiteGraph::build(vs, {{0, 1}}), NotBipartite);
}

TEST(GraphCore, CertificateFindsOddWalk) {
  auto cert = is_bipartite_certificate(triangle());
  ASSERT_TRUE(std::holds_alternative<OddClosedWalk>(cert));
  const auto& walk = std::get<OddClosedWalk>(cert).walk;
  EXPECT_EQ(walk.size() % 2, 1u);
  Graph t = triangle();
  for (size_t i = 0; i < walk.size(); ++i)
    EXPECT_TRUE(t.find_edge(walk[i], walk[(i + 1) % walk.size()]).has_value());
}

TEST(GraphCore, CertificateColouringIsProper) {
  BipartiteGraph g = grid_graph(3, 4);
  auto cert = is_bipartite_certificate(g);
  ASSERT_TRUE(std::holds_alternative<TwoColoring>(cert));
  const auto& sides = std::get<TwoColoring>(cert).sides;
  for (const auto& e : g.edges()) EXPECT_NE(sides[e.u], sides[e.v]);
}

TEST(GraphCore, SubdivisionKeepsParity) {
  BipartiteGraph c4 = even_cycle(4);
  auto even = subdivide_edge(c4, 0, 2);
  EXPECT_EQ(even.graph.num_vertices(), 6);
  EXPECT_EQ(even.graph.num_edges(), 6);
  EXPECT_FALSE(even.side_flip);
  EXPECT_EQ(even.edge_map[0], -1);
  EXPECT_TRUE(std::holds_alternative<TwoColoring>(is_bipartite_certificate(even.graph)));
  auto odd = subdivide_edge(c4, 0, 1);
  EXPECT_TRUE(odd.side_flip);
  EXPECT_TRUE(std::holds_alternative<OddClosedWalk>(is_bipartite_certificate(odd.graph)));
}

TEST(GraphCore, HashDependsOnContent) {
  EXPECT_EQ(even_cycle(6).content_hash(), even_cycle(6).content_hash());
  EXPECT_NE(even_cycle(6).content_hash(), even_cycle(8).content_hash());
  EXPECT_EQ(even_cycle(6).hash_hex().size(), 16u);
}

TEST(GraphCore, BuilderSubdivideAndRemove) {
  GraphBuilder b;
  VertexId u = b.add_vertex("u", Side::kLeft), v = b.add_vertex("v", Side::kRight);
  int e = b.add_edge(u, v);
  auto mid = b.subdivide(e, u, 2, "s");
  ASSERT_EQ(mid.size(), 2u);
  EXPECT_EQ(b.side(mid[0]), Side::kRight);
  EXPECT_EQ(b.side(mid[1]), Side::kLeft);
  EXPECT_EQ(b.find_edge(u, v), -1);
  BipartiteGraph g = b.build_bipartite();
  EXPECT_EQ(g.num_edges(), 3);
  int extra = b.add_edge(u, v);
  b.remove_edge(extra);
  EXPECT_EQ(b.build_graph().num_edges(), 3);
}

TEST(GraphCore, RegistryRoles) {
  GadgetRegistry reg;
  int a = reg.add(GadgetKind::kCity, {{"width", 1}});
  int t = reg.add(GadgetKind::kTower, {{"height", 2}});
  reg.adopt(a, t);
  reg.at(t).roles["v"] = 7;
  EXPECT_EQ(reg.at(t).role("v"), 7);
  EXPECT_EQ(reg.at(t).param("height"), 2);
  EXPECT_EQ(reg.at(t).parent, a);
  EXPECT_EQ(reg.of_kind(GadgetKind::kTower), std::vector<int>{t});
  EXPECT_EQ(kind_from_name(kind_name(GadgetKind::kForall)), GadgetKind::kForall);
}

TEST(GraphIo, JsonRoundTrip) {
  BipartiteGraph g = grid_graph(2, 3);
  ImportedGraph back = import_graph_json(export_graph_json(g));
  EXPECT_EQ(back.graph.content_hash(), g.content_hash());
}

TEST(GraphIo, PlainJsonAccepted) {
  ImportedGraph ig = import_graph_json(R"({"vertices": ["x", "y"], "edges": [[0, 1]]})");
  EXPECT_EQ(ig.graph.num_vertices(), 2);
  EXPECT_EQ(ig.graph.vertex(1).id, "y");
}

TEST(GraphIo, MalformedInputReportsPosition) {
  try {
    import_graph_json("{\"vertices\": [1, 2],\n \"edges\": [[0, 1]");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2);
  }
  EXPECT_THROW(import_graph_json(R"({"vertices": []})"), ParseError);
  EXPECT_THROW(import_graph_json(R"({"vertices": [1, 2], "edges": [[0]]})"), ParseError);
  EXPECT_THROW(read_file("/nonexistent/graph.json"), ParseError);
}

TEST(GraphIo, DotMarksMatchedEdges) {
  BipartiteGraph c4 = even_cycle(4);
  std::string plain = export_dot(c4);
  EXPECT_NE(plain.find("graph"), std::string::npos);
  EXPECT_EQ(plain.find("bold"), std::string::npos);
  auto m = matching_from_pairs(c4, {{0, 2}, {1, 3}});
  std::string dot = export_dot(c4, &m);
  EXPECT_NE(dot.find("bold"), std::string::npos);
}

TEST(GraphIo, MatchingAndSequenceJson) {
  BipartiteGraph c4 = even_cycle(4);
  auto m = matching_from_pairs(c4, {{0, 2}, {1, 3}});
  EXPECT_EQ(matching_from_json(c4, matching_to_json(c4, m)), m);
  FlipSequence s;
  s.start = m;
  s.cycles.push_back(make_edge_set({0, 1, 2, 3}));
  FlipSequence back = flip_sequence_from_json(c4, flip_sequence_to_json(c4, s));
  EXPECT_EQ(back.start, m);
  EXPECT_EQ(back.cycles, s.cycles);
}

TEST(Instances, GalleryGraphsAreBipartiteAndSmall) {
  for (const auto& ng : test_graph_gallery()) {
    SCOPED_TRACE(ng.name);
    EXPECT_LE(ng.graph.num_vertices(), 24);
    EXPECT_TRUE(std::holds_alternative<TwoColoring>(is_bipartite_certificate(ng.graph)));
  }
}

TEST(Instances, HamInstanceJsonRoundTrip) {
  HamInstance inst = near_complete_instance(5, {{2, 3}, {4, 0}});
  HamInstance back = parse_ham_instance(ham_instance_to_json(inst));
  EXPECT_EQ(back.graph.arcs(), inst.graph.arcs());
  EXPECT_EQ(back.pairs, inst.pairs);
  EXPECT_EQ(back.designated(1), 1);
  EXPECT_EQ(back.u(1), 4);
  EXPECT_EQ(back.w(1), 0);
  EXPECT_EQ(back.pair_of(1), 1);
  EXPECT_EQ(back.pair_of(3), -1);
}

TEST(Instances, InvalidInstancesRejected) {
  // Designated vertex with a third out-arc.
  EXPECT_THROW(parse_ham_instance(R"({"arcs": [[0,1],[0,2],[0,3],[1,0],[2,0],[3,0]],
                                      "pairs": [[0,1]]})"),
               InstanceInvalid);
  // Pair arcs from different tails.
  EXPECT_THROW(parse_ham_instance(R"({"arcs": [[0,1],[1,2],[2,0]], "pairs": [[0,1]]})"),
               InstanceInvalid);
  EXPECT_THROW(parse_ham_instance("[1, 2"), ParseError);
}

TEST(Instances, PatternsIndexAndArcs) {
  HamInstance inst = near_complete_instance(5, {{2, 3}, {4, 0}});
  Pattern p = pattern_from_index(2, 0b01);
  EXPECT_EQ(p.str(), "e1 ~e2");
  EXPECT_EQ(pattern_arcs(inst, p), (std::vector<int>{inst.pairs[0].first, inst.pairs[1].second}));
  EXPECT_EQ(pattern_from_index(0, 0).str(), "-");
  EXPECT_THROW(check_pattern(inst, pattern_from_index(1, 0)), PatternInvalid);
}

TEST(Instances, DimacsStrict) {
  CnfFormula f = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n2 3 -1 0\n");
  EXPECT_EQ(f.num_vars, 3);
  ASSERT_EQ(f.clauses.size(), 2u);
  EXPECT_EQ(f.clauses[1], (std::vector<int>{2, 3, -1}));
  EXPECT_EQ(parse_dimacs(to_dimacs(f)).clauses, f.clauses);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);    // variable out of range
  EXPECT_THROW(parse_dimacs("p cnf 2 2\n1 2 0\n"), ParseError);    // clause count
  EXPECT_THROW(parse_dimacs("1 2 0\n"), ParseError);               // missing header
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
}

TEST(Instances, RandomGeneratorsDeterministic) {
  EXPECT_EQ(random_cnf(7, 4, 5).clauses, random_cnf(7, 4, 5).clauses);
  EXPECT_EQ(random_ham_instance(3, 6, 2, 0.5).graph.arcs(),
            random_ham_instance(3, 6, 2, 0.5).graph.arcs());
  EXPECT_EQ(random_bipartite(4, 8, 0.3).content_hash(), random_bipartite(4, 8, 0.3).content_hash());
  for (const auto& c : random_cnf(11, 4, 5).clauses) EXPECT_LE(c.size(), 3u);
}

TEST(Instances, DeskCorpusShape) {
  auto corpus = desk_corpus();
  int yes = 0, no = 0;
  for (const auto& e : corpus) (e.expected_yes ? yes : no)++;
  EXPECT_GE(corpus.size(), 10u);
  EXPECT_GE(yes, 5);
  EXPECT_GE(no, 3);
}
