#include "bpm/builder.h"

namespace bpm {

const char* kind_name(GadgetKind k) {
  switch (k) {
    case GadgetKind::kTower: return "tower";
    case GadgetKind::kCity: return "city";
    case GadgetKind::kXor: return "xor";
    case GadgetKind::kLadder: return "ladder";
    case GadgetKind::kForall: return "forall";
  }
  return "?";
}

GadgetKind kind_from_name(const std::string& s) {
  for (GadgetKind k : {GadgetKind::kTower, GadgetKind::kCity, GadgetKind::kXor,
                       GadgetKind::kLadder, GadgetKind::kForall})
    if (s == kind_name(k)) return k;
  throw Error("unknown gadget kind '" + s + "'");
}

VertexId GadgetHandle::role(const std::string& r) const {
  auto it = roles.find(r);
  if (it == roles.end())
    throw Error(std::string(kind_name(kind)) + " #" + std::to_string(id) + " has no role " + r);
  return it->second;
}

int GadgetHandle::param(const std::string& p) const {
  auto it = params.find(p);
  if (it == params.end()) throw Error("gadget has no parameter " + p);
  return it->second;
}

int GadgetRegistry::add(GadgetKind kind, std::map<std::string, int> params) {
  GadgetHandle h;
  h.id = size();
  h.kind = kind;
  h.params = std::move(params);
  gadgets_.push_back(std::move(h));
  return gadgets_.back().id;
}

std::vector<int> GadgetRegistry::of_kind(GadgetKind k) const {
  std::vector<int> out;
  for (const auto& g : gadgets_)
    if (g.kind == k) out.push_back(g.id);
  return out;
}

void GadgetRegistry::adopt(int parent, int child) {
  gadgets_[parent].children.push_back(child);
  gadgets_[child].parent = parent;
}

GraphBuilder GraphBuilder::from_graph(const Graph& g) {
  GraphBuilder b;
  for (const auto& v : g.vertices()) {
    VertexId x = b.add_vertex(v.id, v.side);
    b.vertices_[x].roles = v.roles;
  }
  for (const auto& e : g.edges()) b.add_edge(e.u, e.v);
  return b;
}

VertexId GraphBuilder::add_vertex(std::string id, Side side) {
  VertexSpec s;
  s.id = std::move(id);
  s.side = side;
  vertices_.push_back(std::move(s));
  return num_vertices() - 1;
}

int GraphBuilder::add_edge(VertexId u, VertexId v) {
  if (u < 0 || u >= num_vertices()) throw DanglingEndpoint(u);
  if (v < 0 || v >= num_vertices()) throw DanglingEndpoint(v);
  int h = static_cast<int>(edges_.size());
  edges_.emplace_back(u, v);
  alive_.push_back(true);
  index_.emplace(pair_key(u, v), h);
  return h;
}

void GraphBuilder::remove_edge(int handle) {
  if (!alive_.at(handle)) throw EdgeNotFound(edges_[handle].first, edges_[handle].second);
  alive_[handle] = false;
  auto [lo, hi] = index_.equal_range(pair_key(edges_[handle].first, edges_[handle].second));
  for (auto it = lo; it != hi; ++it) {
    if (it->second == handle) {
      index_.erase(it);
      break;
    }
  }
}

int GraphBuilder::find_edge(VertexId u, VertexId v) const {
  auto it = index_.find(pair_key(u, v));
  return it == index_.end() ? -1 : it->second;
}

std::vector<VertexId> GraphBuilder::subdivide(int handle, VertexId from, int count,
                                              const std::string& id_prefix) {
  auto [p, q] = edges_.at(handle);
  if (from != p && from != q) throw EdgeNotFound(from, -1);
  VertexId to = from == p ? q : p;
  remove_edge(handle);
  std::vector<VertexId> fresh;
  Side s = side(from);
  VertexId prev = from;
  for (int i = 1; i <= count; ++i) {
    s = opposite(s);
    VertexId x = add_vertex(id_prefix + std::to_string(i), s);
    add_edge(prev, x);
    fresh.push_back(x);
    prev = x;
  }
  add_edge(prev, to);
  return fresh;
}

void GraphBuilder::tag(VertexId v, int gadget, const std::string& role) {
  vertices_[v].roles.push_back(std::string(kind_name(registry_.at(gadget).kind)) + "#" +
                               std::to_string(gadget) + "." + role);
}

void GraphBuilder::set_role(int gadget, const std::string& role, VertexId v) {
  registry_.at(gadget).roles[role] = v;
  tag(v, gadget, role);
}

Graph GraphBuilder::build_graph() const {
  std::vector<std::pair<VertexId, VertexId>> es;
  for (size_t i = 0; i < edges_.size(); ++i)
    if (alive_[i]) es.push_back(edges_[i]);
  return Graph::build(vertices_, es);
}

BipartiteGraph GraphBuilder::build_bipartite() const { return BipartiteGraph::from(build_graph()); }

}  // namespace bpm
