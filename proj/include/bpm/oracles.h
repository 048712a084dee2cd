// Exact brute-force ground truth: Hamiltonian cycles, the forall-exists
// decision by pattern enumeration, CNF satisfiability, epsilon-good walks and
// simple-cycle enumeration.

#ifndef BPM_ORACLES_H_
#define BPM_ORACLES_H_

#include <boost/rational.hpp>
#include <functional>
#include <optional>
#include <vector>

#include "bpm/graph.h"
#include "bpm/instances.h"

namespace bpm {

class TooManyPairs : public Error {
 public:
  using Error::Error;
};
class TooManyVariables : public Error {
 public:
  using Error::Error;
};
class InvalidWalk : public Error {
 public:
  using Error::Error;
};

using Rational = boost::rational<int64_t>;

struct ArcConstraints {
  std::vector<int> required;
  std::vector<int> forbidden;
};
// Vertex order of a directed Hamiltonian cycle starting at vertex 0, or
// nullopt. Deterministic: lowest-index successor first.
std::optional<std::vector<int>> ham_cycle_directed(const DirectedGraph& g,
                                                   const ArcConstraints& c = {});
// Undirected counterpart, with required and forbidden edge indices.
std::optional<std::vector<VertexId>> ham_cycle_undirected(
    const Graph& g, const std::vector<EdgeId>& required = {},
    const std::vector<EdgeId>& forbidden = {});

bool is_ham_cycle(const DirectedGraph& g, const std::vector<int>& order);
bool is_ham_cycle(const Graph& g, const std::vector<VertexId>& order);

// A Hamiltonian cycle respects P when its intersection with the paired arcs
// is exactly the chosen arcs.
bool respects_pattern(const HamInstance& inst, const std::vector<int>& order, const Pattern& p);
std::optional<std::vector<int>> ham_cycle_respecting(const HamInstance& inst, const Pattern& p);

struct PatternWitness {
  Pattern pattern;
  std::optional<std::vector<int>> cycle;
};
struct ForallExistsResult {
  bool yes = true;
  std::vector<PatternWitness> table;  // all 2^k patterns
  std::optional<Pattern> refuting;    // first pattern without a cycle
};
ForallExistsResult forall_exists_decision(const HamInstance& inst, int max_pairs = 20);

struct CnfResult {
  bool satisfiable = false;
  int max_satisfied = 0;
  std::vector<bool> best;  // an assignment reaching max_satisfied, index 1..n
};
int count_satisfied(const CnfFormula& f, uint64_t assignment);  // bit i-1 = x_i
CnfResult cnf_brute_force(const CnfFormula& f, int max_vars = 24);

// Closed walk (v_1, ..., v_m) with visit counts; levels[i] = W_i.
struct WalkRecord {
  std::vector<VertexId> walk;
  std::vector<int> visits;                  // per vertex of the graph
  std::vector<std::vector<VertexId>> levels;
  int w1() const { return levels.size() > 1 ? static_cast<int>(levels[1].size()) : 0; }
};
WalkRecord make_walk_record(const Graph& g, std::vector<VertexId> walk);  // throws InvalidWalk

struct EpsGood {
  bool good = false;
  int w1 = 0;
};
// |W_1| >= (1 - eps) n, decided exactly.
EpsGood eps_good_check(const WalkRecord& w, Rational eps, int n);

// Calls fn with the vertex sequence of every simple cycle (length >= 3, or
// >= 4 when bipartite) using only allowed edges, each cycle once. fn returns
// false to stop. Returns the number of cycles reported.
size_t for_each_simple_cycle(const Graph& g, const std::function<bool(EdgeId)>& allowed,
                             const std::function<bool(const std::vector<VertexId>&)>& fn);
// Same, restricted to cycles containing every edge of `required`.
size_t for_each_cycle_through(const Graph& g, const std::function<bool(EdgeId)>& allowed,
                              const std::vector<EdgeId>& required,
                              const std::function<bool(const std::vector<VertexId>&)>& fn);

}  // namespace bpm

#endif  // BPM_ORACLES_H_
