// Towers, cities, ladders, XOR and forall gadgets: construction, state and
// cycle classification, and cycle routing through a built gadget.
//
// Role names follow the usual drawings: a tower between v and w has rungs
// a_i b_i (i = 0..h); a ladder has a_0..a_6 and b_0..b_6 with rungs 1..5;
// an XOR between ab and uv subdivides them by x_1..x_4 and y_1..y_4; a
// forall gadget owns x_1..x_10 and is attached at v_out, u_in and w_in.

#ifndef BPM_GADGETS_H_
#define BPM_GADGETS_H_

#include <functional>
#include <string>
#include <vector>

#include "bpm/builder.h"
#include "bpm/graph.h"
#include "bpm/matching.h"

namespace bpm {

class ScaleInvalid : public Error {
 public:
  using Error::Error;
};
class WrongGraph : public Error {
 public:
  using Error::Error;
};
class StateNotSemiDefault : public Error {
 public:
  using Error::Error;
};

struct CityScale {
  int width = 1;   // towers per city
  int height = 2;  // rungs above a_0 b_0 in every tower
};

// ---- construction --------------------------------------------------------

// Tower between v and w. With a0 == -1 the vertex a_0 and the edge v a_0 are
// created; otherwise a0 is reused and v a_0 must already exist.
int add_tower(GraphBuilder& b, VertexId v, VertexId a0, VertexId w, int h);
int add_city(GraphBuilder& b, VertexId x, VertexId y, CityScale s);
int add_ladder(GraphBuilder& b, VertexId a0, VertexId b0, VertexId a6, VertexId b6);

// An edge that may have been replaced by XOR subdivisions. `path` is the
// physical path from the first endpoint to the second; `front` is the
// builder handle of its first segment, the one the next XOR subdivides.
struct LogicalEdge {
  std::vector<VertexId> path;
  int front = -1;
};
LogicalEdge make_logical_edge(GraphBuilder& b, VertexId p, VertexId q);

enum class ConnectorKind { kCity, kVertex };
struct Connector {
  ConnectorKind kind = ConnectorKind::kCity;
  CityScale scale;
};
int add_xor(GraphBuilder& b, LogicalEdge& e1, LogicalEdge& e2, const Connector& c);
int add_forall(GraphBuilder& b, VertexId v_out, VertexId u_in, VertexId w_in, int t,
               CityScale s);

struct BuiltGadget {
  BipartiteGraph graph;
  GadgetRegistry registry;
  int root = -1;
};
BuiltGadget build_tower(int h);
BuiltGadget build_city(CityScale s);
BuiltGadget build_ladder();
BuiltGadget build_forall(int t, CityScale s);
// XOR between two existing edges of g; the result keeps g's vertex ids.
BuiltGadget insert_xor(const BipartiteGraph& g, EdgeId e1, EdgeId e2, CityScale s);

std::vector<int> children_of_kind(const GadgetRegistry& reg, int id, GadgetKind k);
// Every gadget of kind k nested under `root` (root included).
std::vector<int> descendants_of_kind(const GadgetRegistry& reg, int root, GadgetKind k);

// ---- states --------------------------------------------------------------

enum class StateLabel {
  kDefault,
  kLocked,
  kSemiDefault,
  kTopOpen,
  kBottomOpen,
  kMatched,
  kOther
};
const char* state_name(StateLabel s);

struct GadgetState {
  StateLabel label = StateLabel::kOther;
  bool semi_default = false;
  std::vector<int> horizontals;  // H(M) for towers and ladders
};
GadgetState classify_state(const Graph& g, const GadgetRegistry& reg, int id,
                           const PerfectMatching& m);

// Semi-default everywhere: every city matched and every forall gadget has
// x_9 x_10 in the matching.
bool is_semi_default(const Graph& g, const GadgetRegistry& reg, const PerfectMatching& m);

// ---- cycles --------------------------------------------------------------

enum class Direction { kNone, kTop, kBottom, kThrough };
char direction_char(Direction d);

enum class CycleVerdict {
  kNotVisiting,
  kVisiting,
  kWellBehaved,
  kIllBehaved,
  kTopState,
  kBottomState,
  kIrregular
};
const char* verdict_name(CycleVerdict v);

struct CycleClass {
  CycleVerdict verdict = CycleVerdict::kNotVisiting;
  Direction direction = Direction::kNone;
  std::vector<int> visited_ladders;  // forall only: positions among its ladders
  bool uses_first = false;           // xor only: side ab / uv in use
  bool uses_second = false;
};
CycleClass classify_cycle(const Graph& g, const GadgetRegistry& reg, int id,
                          const EdgeSet& cycle);

bool city_visited(const Graph& g, const GadgetRegistry& reg, int city, const EdgeSet& cycle);
// A cycle is regular when it visits every city of the graph.
bool is_regular(const Graph& g, const GadgetRegistry& reg, const EdgeSet& cycle);

// Whether a cycle traverses a logical edge, judged on a segment no later
// XOR can subdivide.
bool uses_logical_path(const Graph& g, const std::vector<VertexId>& path, const EdgeSet& cycle);

// ---- routing -------------------------------------------------------------

// Supplies the v..w path taken through a tower.
using TowerPathFn = std::function<std::vector<VertexId>(int tower)>;
std::vector<VertexId> canonical_tower_path(const GadgetRegistry& reg, int tower);

// Partner lookup for XOR subdivision vertices.
class DetourIndex {
 public:
  explicit DetourIndex(const GadgetRegistry& reg);
  struct Detour {
    VertexId partner = -1;
    int city = -1;          // connector city (entry on the ab side)
    VertexId middle = -1;   // single connector vertex
    bool from_entry = true; // this vertex is the city's entry x
  };
  const Detour& at(VertexId v) const;

 private:
  std::unordered_map<VertexId, Detour> map_;
};

// The routing helpers append to `out`, whose last element must be the start.
void append_city(const GadgetRegistry& reg, int city, bool forward, const TowerPathFn& tp,
                 std::vector<VertexId>& out);
void append_logical(const GadgetRegistry& reg, const DetourIndex& di,
                    const std::vector<VertexId>& path, bool forward, const TowerPathFn& tp,
                    std::vector<VertexId>& out);
// Route through a forall gadget from v_out to u_in (top) or w_in (bottom),
// crossing one ladder along `ladder_path` (a_6..b_6 for top, a_0..b_0 for
// bottom, in global vertex ids).
void append_forall(const GadgetRegistry& reg, const DetourIndex& di, int forall, Direction d,
                   const std::vector<VertexId>& ladder_path, const TowerPathFn& tp,
                   std::vector<VertexId>& out);

// Closed vertex walk -> edge set. Throws WrongGraph if a step is not an edge.
EdgeSet edges_of_closed_walk(const Graph& g, const std::vector<VertexId>& walk);

}  // namespace bpm

#endif  // BPM_GADGETS_H_
