// Perfect matchings, alternating cycles and flip distances.
//
// Two perfect matchings are adjacent on the perfect matching polytope of a
// bipartite graph iff their symmetric difference is one cycle, so distances
// on the polytope graph are computed by breadth-first search over cycle flips.

#ifndef BPM_MATCHING_H_
#define BPM_MATCHING_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bpm/graph.h"

namespace bpm {

using EdgeSet = std::vector<EdgeId>;  // sorted, duplicate free

struct PerfectMatching {
  EdgeSet edges;
  uint64_t graph_hash = 0;
  bool operator==(const PerfectMatching& o) const {
    return graph_hash == o.graph_hash && edges == o.edges;
  }
};

struct FlipSequence {
  PerfectMatching start;
  std::vector<EdgeSet> cycles;
  int length() const { return static_cast<int>(cycles.size()); }
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(size_t found);
  size_t found;
};
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(size_t explored);
  size_t explored;
};
class NoPerfectMatching : public Error {
 public:
  NoPerfectMatching();
};
class MatchingMismatch : public Error {
 public:
  using Error::Error;
};
class NotPerfect : public Error {
 public:
  using Error::Error;
};

inline constexpr size_t kDefaultMatchingCap = 1'000'000;
inline constexpr size_t kDefaultStateBudget = 10'000'000;

EdgeSet make_edge_set(std::vector<EdgeId> edges);
EdgeSet symmetric_difference(const EdgeSet& a, const EdgeSet& b);

bool is_perfect_matching(const Graph& g, const EdgeSet& edges);
// Throws NotPerfect.
PerfectMatching make_matching(const Graph& g, std::vector<EdgeId> edges);
PerfectMatching matching_from_pairs(const Graph& g,
                                    const std::vector<std::pair<VertexId, VertexId>>& pairs);
// mate[v] = matched edge of v.
std::vector<EdgeId> mate_edges(const Graph& g, const EdgeSet& m);

std::vector<PerfectMatching> enumerate_perfect_matchings(const Graph& g,
                                                         size_t cap = kDefaultMatchingCap);

struct AlternatingCycle {
  std::vector<VertexId> vertices;  // cyclic order, starts at the smallest vertex
  EdgeSet edges;
};
using AlternatingCycleSet = std::vector<AlternatingCycle>;

// Components of M xor N; each is an even cycle alternating between M and N.
AlternatingCycleSet decompose_symmetric_difference(const Graph& g, const PerfectMatching& m,
                                                   const PerfectMatching& n);
bool is_adjacent(const Graph& g, const PerfectMatching& m, const PerfectMatching& n);

PerfectMatching flip(const PerfectMatching& m, const EdgeSet& cycle);

// Streams every M-alternating cycle as a sorted edge set. The callback
// returns false to stop early. Each cycle is produced exactly once.
void for_each_alternating_cycle(const Graph& g, const PerfectMatching& m,
                                const std::function<bool(const EdgeSet&)>& fn);
std::vector<PerfectMatching> alternating_cycle_neighbors(const Graph& g,
                                                         const PerfectMatching& m);
// Reference implementation: every perfect matching tested pairwise.
std::vector<PerfectMatching> pairwise_neighbors(const Graph& g, const PerfectMatching& m,
                                                const std::vector<PerfectMatching>& all);

struct FlipDistanceResult {
  int distance = 0;
  FlipSequence witness;
  size_t explored = 0;
};
FlipDistanceResult flip_distance(const Graph& g, const PerfectMatching& m,
                                 const PerfectMatching& n,
                                 size_t budget = kDefaultStateBudget);

struct DiameterOptions {
  size_t cap = kDefaultMatchingCap;
  int workers = 1;
};
struct DiameterResult {
  int diameter = 0;
  int circuit_diameter = 0;  // coincides with the diameter on this polytope
  size_t num_matchings = 0;
  PerfectMatching witness_from, witness_to;
  FlipSequence witness;
};
DiameterResult polytope_diameter(const Graph& g, const DiameterOptions& opt = {});

enum class Violation { kNone, kNotACycle, kNotAlternating, kNotPerfectAfterFlip };
const char* violation_name(Violation v);

struct ValidationReport {
  bool ok = true;
  int failed_index = -1;
  Violation violation = Violation::kNone;
  PerfectMatching final_matching;
  std::string detail;
};
ValidationReport validate_flip_sequence(const Graph& g, const PerfectMatching& start,
                                        const std::vector<EdgeSet>& cycles);
inline ValidationReport validate_flip_sequence(const Graph& g, const FlipSequence& s) {
  return validate_flip_sequence(g, s.start, s.cycles);
}

// Checks that `edges` is a single simple cycle and returns its vertices in
// order, or nullopt.
std::optional<std::vector<VertexId>> cycle_vertex_order(const Graph& g, const EdgeSet& edges);

// Any perfect matching (augmenting paths in a shuffled order) followed by
// `walk_steps` random alternating-cycle flips.
std::optional<PerfectMatching> random_perfect_matching(const Graph& g, std::mt19937_64& rng,
                                                       int walk_steps);

}  // namespace bpm

#endif  // BPM_MATCHING_H_
