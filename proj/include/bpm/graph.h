// Simple undirected graphs, bipartite graphs and digraphs.
//
// Graphs are immutable once built. Gadget code assembles them through the
// mutable GraphBuilder (see builder.h) and then freezes the result.

#ifndef BPM_GRAPH_H_
#define BPM_GRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace bpm {

using VertexId = int32_t;
using EdgeId = int32_t;

enum class Side : uint8_t { kLeft, kRight, kNone };

const char* side_name(Side s);
Side opposite(Side s);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotBipartite : public Error {
 public:
  NotBipartite(VertexId u, VertexId v);
  VertexId u, v;
};
class DuplicateEdge : public Error {
 public:
  DuplicateEdge(VertexId u, VertexId v);
  VertexId u, v;
};
class DanglingEndpoint : public Error {
 public:
  explicit DanglingEndpoint(VertexId v);
  VertexId v;
};
class EdgeNotFound : public Error {
 public:
  EdgeNotFound(VertexId u, VertexId v);
  VertexId u, v;
};

struct VertexSpec {
  std::string id;
  Side side = Side::kNone;
  std::vector<std::string> roles;
};

struct Edge {
  VertexId u;
  VertexId v;
  VertexId other(VertexId x) const { return x == u ? v : u; }
};

// Simple undirected graph. Self loops and parallel edges are rejected.
class Graph {
 public:
  Graph() = default;
  static Graph build(std::vector<VertexSpec> vertices,
                     const std::vector<std::pair<VertexId, VertexId>>& edges);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const VertexSpec& vertex(VertexId v) const { return vertices_[v]; }
  const std::vector<VertexSpec>& vertices() const { return vertices_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  Side side(VertexId v) const { return vertices_[v].side; }

  // Incident edges of v sorted by the neighbour's index.
  std::span<const EdgeId> incident(VertexId v) const;
  int degree(VertexId v) const { return static_cast<int>(incident(v).size()); }

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;
  EdgeId edge_between(VertexId u, VertexId v) const;  // throws EdgeNotFound
  std::optional<VertexId> find_vertex(const std::string& id) const;

  // 64-bit FNV-1a over vertex ids, sides and the edge list.
  uint64_t content_hash() const;
  std::string hash_hex() const;

 protected:
  std::vector<VertexSpec> vertices_;
  std::vector<Edge> edges_;
  std::vector<int32_t> adj_offset_;
  std::vector<EdgeId> adj_;
  std::unordered_map<uint64_t, EdgeId> edge_index_;
  std::unordered_map<std::string, VertexId> id_index_;
};

// A graph whose side labels are a proper 2-colouring.
class BipartiteGraph : public Graph {
 public:
  BipartiteGraph() = default;
  static BipartiteGraph build(std::vector<VertexSpec> vertices,
                              const std::vector<std::pair<VertexId, VertexId>>& edges);
  // Checks the side labels of g; throws NotBipartite on the first bad edge.
  static BipartiteGraph from(Graph g);
};

struct TwoColoring {
  std::vector<Side> sides;
};
struct OddClosedWalk {
  std::vector<VertexId> walk;  // v0 v1 ... v_{2k} with v_{2k} adjacent to v0
};
using BipartitenessCertificate = std::variant<TwoColoring, OddClosedWalk>;

// Ignores the stored side labels and decides bipartiteness from scratch.
BipartitenessCertificate is_bipartite_certificate(const Graph& g);

struct SubdivisionResult {
  Graph graph;
  std::vector<VertexId> new_vertices;  // ordered from edge.u towards edge.v
  std::vector<EdgeId> edge_map;        // old edge -> new edge, -1 for the removed one
  bool side_flip = false;              // true when the labels no longer form a 2-colouring
};

// Replaces edge e by a path with `count` inner vertices. Sides of the new
// vertices alternate starting opposite to edge.u.
SubdivisionResult subdivide_edge(const Graph& g, EdgeId e, int count);

class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(int n, std::vector<std::pair<int, int>> arcs);
  int num_vertices() const { return n_; }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  const std::pair<int, int>& arc(int a) const { return arcs_[a]; }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
  const std::vector<int>& out_arcs(int v) const { return out_[v]; }
  const std::vector<int>& in_arcs(int v) const { return in_[v]; }
  std::optional<int> find_arc(int u, int v) const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<std::vector<int>> out_, in_;
};

inline uint64_t pair_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
}

}  // namespace bpm

#endif  // BPM_GRAPH_H_
