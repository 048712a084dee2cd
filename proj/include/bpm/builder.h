// Mutable multigraph used while assembling gadgets, plus the registry that
// remembers which vertex plays which role in which gadget instance.

#ifndef BPM_BUILDER_H_
#define BPM_BUILDER_H_

#include <map>
#include <string>
#include <vector>

#include "bpm/graph.h"

namespace bpm {

enum class GadgetKind { kTower, kCity, kXor, kLadder, kForall };
const char* kind_name(GadgetKind k);
GadgetKind kind_from_name(const std::string& s);

struct GadgetHandle {
  int id = -1;
  GadgetKind kind = GadgetKind::kTower;
  std::map<std::string, int> params;
  std::map<std::string, VertexId> roles;
  std::vector<int> children;
  int parent = -1;
  // Named vertex sequences, e.g. the physical path behind a logical edge.
  std::map<std::string, std::vector<VertexId>> paths;

  VertexId role(const std::string& r) const;
  int param(const std::string& p) const;
};

class GadgetRegistry {
 public:
  int add(GadgetKind kind, std::map<std::string, int> params);
  GadgetHandle& at(int id) { return gadgets_[id]; }
  const GadgetHandle& at(int id) const { return gadgets_[id]; }
  const std::vector<GadgetHandle>& all() const { return gadgets_; }
  std::vector<int> of_kind(GadgetKind k) const;
  void adopt(int parent, int child);
  int size() const { return static_cast<int>(gadgets_.size()); }

 private:
  std::vector<GadgetHandle> gadgets_;
};

// Edges may be parallel or loops while building; build() insists on a
// simple graph. Removed edges leave a hole that build() compacts away.
class GraphBuilder {
 public:
  GraphBuilder() = default;
  static GraphBuilder from_graph(const Graph& g);

  VertexId add_vertex(std::string id, Side side);
  int add_edge(VertexId u, VertexId v);
  void remove_edge(int handle);
  // Finds a live edge between u and v; -1 if none.
  int find_edge(VertexId u, VertexId v) const;
  // Replaces a live edge by a path through `count` fresh vertices, listed
  // from `from` towards the other endpoint. Sides alternate.
  std::vector<VertexId> subdivide(int handle, VertexId from, int count,
                                  const std::string& id_prefix);

  void tag(VertexId v, int gadget, const std::string& role);
  void set_role(int gadget, const std::string& role, VertexId v);

  Side side(VertexId v) const { return vertices_[v].side; }
  const std::string& id(VertexId v) const { return vertices_[v].id; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  std::pair<VertexId, VertexId> endpoints(int handle) const { return edges_[handle]; }

  GadgetRegistry& registry() { return registry_; }
  const GadgetRegistry& registry() const { return registry_; }

  Graph build_graph() const;
  BipartiteGraph build_bipartite() const;

 private:
  std::vector<VertexSpec> vertices_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<bool> alive_;
  std::multimap<uint64_t, int> index_;
  GadgetRegistry registry_;
};

}  // namespace bpm

#endif  // BPM_BUILDER_H_
