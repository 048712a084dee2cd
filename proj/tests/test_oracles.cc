#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "bpm/instances.h"
#include "bpm/oracles.h"

using namespace bpm;

namespace {

bool brute_directed(const DirectedGraph& g) {
  std::vector<int> p(g.num_vertices());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (is_ham_cycle(g, p)) return true;
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return false;
}

bool brute_undirected(const Graph& g) {
  std::vector<VertexId> p(g.num_vertices());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (is_ham_cycle(g, p)) return true;
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return false;
}

Graph random_graph(uint64_t seed, int n, double p) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<VertexSpec> vs;
  for (int i = 0; i < n; ++i) vs.push_back({std::to_string(i), Side::kNone, {}});
  std::vector<std::pair<VertexId, VertexId>> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) es.emplace_back(i, j);
  return Graph::build(vs, es);
}

}  // namespace

TEST(Oracles, DirectedAgreesWithPermutations) {
  for (uint64_t s = 1; s <= 60; ++s) {
    auto inst = random_ham_instance(s, 6, 0, 0.4);
    auto c = ham_cycle_directed(inst.graph);
    EXPECT_EQ(c.has_value(), brute_directed(inst.graph)) << "seed " << s;
    if (c) {
      EXPECT_TRUE(is_ham_cycle(inst.graph, *c));
      EXPECT_EQ((*c)[0], 0);
    }
  }
}

TEST(Oracles, UndirectedAgreesWithPermutations) {
  for (uint64_t s = 1; s <= 150; ++s) {
    Graph g = random_graph(s, 7, 0.45);
    auto c = ham_cycle_undirected(g);
    EXPECT_EQ(c.has_value(), brute_undirected(g)) << "seed " << s;
    if (c) {
      EXPECT_TRUE(is_ham_cycle(g, *c));
    }
  }
}

TEST(Oracles, UndirectedConstraints) {
  Graph g = random_graph(0, 6, 1.0);  // K6
  auto req = ham_cycle_undirected(g, {0});
  ASSERT_TRUE(req.has_value());
  auto e = g.edge(0);
  auto pos = std::find(req->begin(), req->end(), e.u) - req->begin();
  int n = static_cast<int>(req->size());
  EXPECT_TRUE((*req)[(pos + 1) % n] == e.v || (*req)[(pos + n - 1) % n] == e.v);
  // Forbidding all edges at vertex 0 but one leaves no cycle.
  std::vector<EdgeId> forbid(g.incident(0).begin() + 1, g.incident(0).end());
  EXPECT_FALSE(ham_cycle_undirected(g, {}, forbid).has_value());
}

TEST(Oracles, PatternDecisionOnCorpus) {
  for (const auto& e : desk_corpus()) {
    SCOPED_TRACE(e.name);
    auto d = forall_exists_decision(e.instance);
    EXPECT_EQ(d.yes, e.expected_yes);
    EXPECT_EQ(d.table.size(), size_t{1} << e.instance.k());
    EXPECT_EQ(d.refuting.has_value(), !d.yes);
    for (const auto& w : d.table) {
      auto direct = ham_cycle_respecting(e.instance, w.pattern);
      EXPECT_EQ(direct.has_value(), w.cycle.has_value());
      if (w.cycle) {
        EXPECT_TRUE(respects_pattern(e.instance, *w.cycle, w.pattern));
      }
    }
    if (d.refuting) {
      auto first = std::find_if(d.table.begin(), d.table.end(),
                                [](const PatternWitness& w) { return !w.cycle; });
      EXPECT_EQ(first->pattern, *d.refuting);
    }
  }
  EXPECT_THROW(forall_exists_decision(random_ham_instance(1, 8, 3, 0.5), 2), TooManyPairs);
}

TEST(Oracles, CnfBruteForce) {
  CnfFormula f = parse_dimacs("p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n");
  auto r = cnf_brute_force(f);
  EXPECT_FALSE(r.satisfiable);
  EXPECT_EQ(r.max_satisfied, 3);
  EXPECT_EQ(count_satisfied(f, 0b11), 3);
  CnfFormula g = parse_dimacs("p cnf 3 2\n1 -2 0\n2 3 0\n");
  auto s = cnf_brute_force(g);
  EXPECT_TRUE(s.satisfiable);
  EXPECT_EQ(s.max_satisfied, 2);
  uint64_t bits = 0;
  for (int i = 1; i <= 3; ++i)
    if (s.best[i]) bits |= uint64_t{1} << (i - 1);
  EXPECT_EQ(count_satisfied(g, bits), 2);
  CnfFormula big;
  big.num_vars = 30;
  big.clauses = {{1}};
  EXPECT_THROW(cnf_brute_force(big), TooManyVariables);
}

TEST(Oracles, WalkRecordsAndEpsGood) {
  Graph c4 = random_graph(0, 4, 1.0);
  auto w = make_walk_record(c4, {0, 1, 2, 3});
  EXPECT_EQ(w.w1(), 4);
  auto twice = make_walk_record(c4, {0, 1, 0, 2, 3, 2});
  EXPECT_EQ(twice.visits[0], 2);
  EXPECT_EQ(twice.w1(), 2);
  EXPECT_TRUE(eps_good_check(w, Rational(0), 4).good);
  EXPECT_FALSE(eps_good_check(twice, Rational(1, 4), 4).good);
  EXPECT_TRUE(eps_good_check(twice, Rational(1, 2), 4).good);
  Graph path = Graph::build({{"a", Side::kNone, {}}, {"b", Side::kNone, {}}, {"c", Side::kNone, {}}},
                            {{0, 1}, {1, 2}});
  EXPECT_THROW(make_walk_record(path, {0, 1, 2}), InvalidWalk);
}

TEST(Oracles, SimpleCycleEnumerationCountsK4) {
  Graph k4 = random_graph(0, 4, 1.0);
  std::set<std::vector<VertexId>> seen;
  size_t n = for_each_simple_cycle(k4, [](EdgeId) { return true; },
                                   [&](const std::vector<VertexId>& c) {
                                     seen.insert(c);
                                     return true;
                                   });
  // 4 triangles and 3 four-cycles.
  EXPECT_EQ(n, 7u);
  EXPECT_EQ(seen.size(), 7u);
}

// Brute force over edge subsets: a subset is a cycle when it is connected
// and 2-regular on its support.
TEST(Oracles, CycleEnumeratorsAgreeWithSubsets) {
  for (uint64_t s = 1; s <= 25; ++s) {
    Graph g = random_graph(s, 6, 0.55);
    const int m = g.num_edges();
    if (m > 14) continue;
    size_t brute = 0;
    size_t through0 = 0;
    for (uint32_t mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> deg(g.num_vertices(), 0);
      std::vector<EdgeId> es;
      for (int e = 0; e < m; ++e)
        if (mask >> e & 1) {
          ++deg[g.edge(e).u];
          ++deg[g.edge(e).v];
          es.push_back(e);
        }
      if (std::any_of(deg.begin(), deg.end(), [](int d) { return d != 0 && d != 2; })) continue;
      // connected: walk around from one edge
      VertexId start = g.edge(es[0]).u, cur = start;
      EdgeId last = -1;
      size_t len = 0;
      do {
        for (EdgeId e : g.incident(cur))
          if ((mask >> e & 1) && e != last) {
            last = e;
            cur = g.edge(e).other(cur);
            ++len;
            break;
          }
      } while (cur != start && len <= es.size());
      if (len != es.size()) continue;
      ++brute;
      if (mask & 1) ++through0;
    }
    auto all = [](EdgeId) { return true; };
    auto count = [](const std::vector<VertexId>&) { return true; };
    EXPECT_EQ(for_each_simple_cycle(g, all, count), brute) << "seed " << s;
    if (m > 0) {
      EXPECT_EQ(for_each_cycle_through(g, all, {0}, count), through0) << "seed " << s;
    }
  }
}
