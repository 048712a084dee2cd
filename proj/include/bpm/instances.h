// Problem instances fed into the reductions: directed graphs with paired
// arcs for the forall-exists Hamiltonian cycle problem, patterns choosing one
// arc per pair, and CNF formulas.

#ifndef BPM_INSTANCES_H_
#define BPM_INSTANCES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "bpm/graph.h"

namespace bpm {

class InstanceInvalid : public Error {
 public:
  using Error::Error;
};
class PatternInvalid : public Error {
 public:
  using Error::Error;
};

// Directed graph H with k designated vertices v^(i). Pair i holds the arc
// indices of e_i = (v^(i), u^(i)) and ebar_i = (v^(i), w^(i)); these are the
// only arcs leaving v^(i).
struct HamInstance {
  DirectedGraph graph;
  std::vector<std::pair<int, int>> pairs;

  int n() const { return graph.num_vertices(); }
  int k() const { return static_cast<int>(pairs.size()); }
  int designated(int i) const { return graph.arc(pairs[i].first).first; }
  int u(int i) const { return graph.arc(pairs[i].first).second; }
  int w(int i) const { return graph.arc(pairs[i].second).second; }
  // Pair index whose designated vertex is v, or -1.
  int pair_of(int v) const;
  void validate() const;  // throws InstanceInvalid
};

// {"n": 4, "arcs": [[u,v],...], "pairs": [[e, ebar],...]}; "n" is optional.
HamInstance parse_ham_instance(const std::string& json_text);
std::string ham_instance_to_json(const HamInstance& inst);

// One choice per pair: true picks e_i, false picks ebar_i.
struct Pattern {
  std::vector<bool> picks_e;
  bool operator==(const Pattern& o) const { return picks_e == o.picks_e; }
  bool operator<(const Pattern& o) const { return picks_e < o.picks_e; }
  // e.g. "e1 ~e2"; "-" for k = 0.
  std::string str() const;
};
Pattern pattern_from_index(int k, uint64_t bits);  // bit i set -> e_{i+1}
std::vector<int> pattern_arcs(const HamInstance& inst, const Pattern& p);
void check_pattern(const HamInstance& inst, const Pattern& p);  // throws PatternInvalid

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // DIMACS literals, nonzero
  void validate() const;                  // throws InstanceInvalid
};
CnfFormula parse_dimacs(const std::string& text);  // throws ParseError
std::string to_dimacs(const CnfFormula& f);

// Seeded random CNF with up to three distinct-variable literals per clause.
CnfFormula random_cnf(uint64_t seed, int num_vars, int num_clauses, int max_width = 3);

// Seeded random instance: every non-designated vertex gets arcs to each other
// vertex with probability `density`; designated vertices get exactly two.
HamInstance random_ham_instance(uint64_t seed, int n, int k, double density);

// ---- small bipartite test graphs ---------------------------------------------
// Vertices are named l<i>/r<i> with sides set; all are BipartiteGraph.

BipartiteGraph even_cycle(int length);  // length >= 4, even
BipartiteGraph complete_bipartite(int a, int b);
BipartiteGraph disjoint_union(const BipartiteGraph& a, const BipartiteGraph& b);
BipartiteGraph grid_graph(int rows, int cols);
// Random edges with probability p plus the perfect matching l_i r_i, so a
// perfect matching always exists.
BipartiteGraph random_bipartite(uint64_t seed, int half, double p);

// The named graphs used by the diameter and adjacency checks.
struct NamedGraph {
  std::string name;
  BipartiteGraph graph;
};
std::vector<NamedGraph> test_graph_gallery();

// Complete digraph on n vertices except that vertex i < targets.size() keeps
// only its two arcs to targets[i].
HamInstance near_complete_instance(int n, const std::vector<std::pair<int, int>>& targets);

// Small fixed instances for end-to-end runs; `expected_yes` is what the
// brute-force oracle decides and is rechecked by the tests.
struct CorpusEntry {
  std::string name;
  HamInstance instance;
  bool expected_yes = false;
};
std::vector<CorpusEntry> desk_corpus();

}  // namespace bpm

#endif  // BPM_INSTANCES_H_
