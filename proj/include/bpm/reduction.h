// The two end-to-end compilations: forall-exists Hamiltonian cycle instances
// to bipartite graphs G_H, and 3SAT formulas to undirected graphs H(phi) and
// on to the inapproximability graph G. Also the special matchings, the
// semi-default projection, flip-sequence synthesis and cycle extraction.

#ifndef BPM_REDUCTION_H_
#define BPM_REDUCTION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bpm/builder.h"
#include "bpm/gadgets.h"
#include "bpm/graph.h"
#include "bpm/instances.h"
#include "bpm/matching.h"
#include "bpm/oracles.h"

namespace bpm {

class ProfileInvalid : public Error {
 public:
  using Error::Error;
};
class ProfileMismatch : public Error {
 public:
  using Error::Error;
};
class InfeasibleScale : public Error {
 public:
  using Error::Error;
};
class NotRegular : public Error {
 public:
  using Error::Error;
};
class NotHamiltonian : public Error {
 public:
  using Error::Error;
};
class ClauseTooLarge : public Error {
 public:
  using Error::Error;
};
class HamProviderFailed : public Error {
 public:
  explicit HamProviderFailed(Pattern p);
  Pattern pattern;
};

// City height h_c, city width t_c and ladders per forall gadget t.
struct ScaleProfile {
  enum class Kind { kDesk, kPaper };
  Kind kind = Kind::kDesk;
  int64_t city_height = 2;
  int64_t city_width = 1;
  int64_t ladders = 1;

  // h_c = 2t, any width >= 1.
  static ScaleProfile desk(int64_t t, int64_t width = 1);
  // h_c = 2n^4, t_c = 4n^4 + 100n, t = n^4.
  static ScaleProfile paper(int64_t n);
  // "h,t,width" as on the command line.
  static ScaleProfile parse(const std::string& text);

  void validate(bool for_synthesis) const;  // throws ProfileInvalid / ProfileMismatch
  CityScale city() const;                   // throws InfeasibleScale beyond int range
  std::string describe() const;
};

// Graph sizes above this are never materialised.
inline constexpr int64_t kMaxBuildVertices = 5'000'000;

// ---- forall-exists HamCycle -> G_H -------------------------------------------

struct GhGraph {
  HamInstance instance;
  ScaleProfile profile;
  BipartiteGraph graph;
  GadgetRegistry registry;
  std::vector<VertexId> v_in, v_out;  // per vertex of H
  std::vector<int> vertex_city;       // per vertex of H
  std::vector<int> forall;            // per pair
  std::vector<VertexId> semi_default_vertices;  // V_s
};

struct GhCensus {
  int64_t vertices = 0, edges = 0;
  int64_t cities = 0, towers = 0, xors = 0, foralls = 0, ladders = 0;
  int64_t v_s = 0;
};

GhGraph build_GH(const HamInstance& inst, const ScaleProfile& profile);
// Counted from the registry of a built graph.
GhCensus census(const GhGraph& gh);
// Closed-form counts; works for profiles too large to build.
GhCensus gh_census_formula(const HamInstance& inst, const ScaleProfile& profile);

// Every tower default, every x_9 x_10 matched, every ladder on its rungs.
PerfectMatching default_matching(const GhGraph& gh);
// Every tower locked; ladders of pair i top-open when P picks e_i, else
// bottom-open.
PerfectMatching pattern_matching(const GhGraph& gh, const Pattern& p);

struct Projection {
  PerfectMatching result;
  FlipSequence sequence;
};
// Flips the components of M xor M_def that meet `anchor` one by one.
Projection project_onto(const Graph& g, const PerfectMatching& m, const PerfectMatching& m_def,
                        const std::vector<VertexId>& anchor);
Projection semi_default_projection(const GhGraph& gh, const PerfectMatching& m);

// Supplies a Hamiltonian cycle of H (vertex order) respecting the pattern.
using HamProvider = std::function<std::optional<std::vector<int>>(const Pattern&)>;
HamProvider oracle_provider(const HamInstance& inst);

struct Synthesis {
  FlipSequence sequence;
  std::vector<std::string> demand;        // s(A) per forall gadget
  std::vector<Pattern> patterns;          // per cycle pair
  std::vector<std::vector<int>> routes;   // per cycle pair
};
// 2 h_c regular cycles taking m1 to m2; both must be semi-default.
Synthesis synthesize_flip_sequence(const GhGraph& gh, const PerfectMatching& m1,
                                   const PerfectMatching& m2, const HamProvider& provider);

struct Extraction {
  std::vector<int> route;  // vertex order in H, starting at vertex 0
  Pattern pattern;
};
Extraction extract_ham_cycle(const GhGraph& gh, const EdgeSet& cycle);

struct RegularityCensus {
  int regular = 0;
  int irregular = 0;
  std::vector<int> city_visits;  // indexed like registry.of_kind(kCity)
  bool locked_to_default = false;
  std::vector<int> under_visited;  // cities below 2h_c - 2 visits, only when locked_to_default
};
RegularityCensus regularity_census(const Graph& g, const GadgetRegistry& reg,
                                   const FlipSequence& seq);

// ---- 3SAT -> H(phi) ------------------------------------------------------------

struct FolkloreGraph {
  CnfFormula formula;
  Graph graph;
  GadgetRegistry registry;  // XOR gadgets with single-vertex connectors
  VertexId v1 = -1, v2 = -1, v3 = -1;
  std::vector<VertexId> z;                             // z_1..z_2k at 0..2k-1
  std::vector<std::vector<VertexId>> clause_vertices;  // u^(j)_1..u^(j)_t
  std::vector<std::vector<VertexId>> literal_paths;    // e_i, ebar_i at 2(i-1), 2(i-1)+1
};
FolkloreGraph build_folklore_hc(const CnfFormula& f);
// 3 + 2k + sum t_j + 12 (k + sum t_j).
int64_t folklore_vertex_count(const CnfFormula& f);

// ---- H -> inapproximability graph G ------------------------------------------

struct InapproxGraph {
  Graph h;
  CityScale scale;
  BipartiteGraph graph;
  GadgetRegistry registry;
  std::vector<VertexId> v_in, v_out;
  std::vector<int> city;
};
// City height n^2 and width 4n^2 + 4n.
CityScale inapprox_paper_scale(int64_t n);
InapproxGraph build_inapprox_G(const Graph& h, CityScale scale);
PerfectMatching inapprox_locked_matching(const InapproxGraph& g);   // M_1
PerfectMatching inapprox_default_matching(const InapproxGraph& g);  // M_2
Projection inapprox_projection(const InapproxGraph& g, const PerfectMatching& m);
// 2 h_c cycles following the Hamiltonian route `ham` of H.
FlipSequence synthesize_inapprox_sequence(const InapproxGraph& g, const PerfectMatching& m1,
                                          const PerfectMatching& m2,
                                          const std::vector<VertexId>& ham);
// Replays a cycle of G as a closed walk in H: every crossing edge towards w
// appends w.
WalkRecord extract_walk(const InapproxGraph& g, const EdgeSet& cycle);

struct EpsilonConstants {
  Rational eps1;
  int d = 0;
  Rational eps2;
  Rational eps;
};
EpsilonConstants epsilon_constants();

}  // namespace bpm

#endif  // BPM_REDUCTION_H_
