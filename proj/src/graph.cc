#include "bpm/graph.h"

#include <algorithm>
#include <cstdio>
#include <deque>

namespace bpm {

const char* side_name(Side s) {
  switch (s) {
    case Side::kLeft: return "L";
    case Side::kRight: return "R";
    default: return "-";
  }
}

Side opposite(Side s) {
  if (s == Side::kLeft) return Side::kRight;
  if (s == Side::kRight) return Side::kLeft;
  return Side::kNone;
}

NotBipartite::NotBipartite(VertexId a, VertexId b)
    : Error("edge " + std::to_string(a) + "-" + std::to_string(b) +
            " joins two vertices of the same side"),
      u(a), v(b) {}
DuplicateEdge::DuplicateEdge(VertexId a, VertexId b)
    : Error("duplicate or loop edge " + std::to_string(a) + "-" + std::to_string(b)),
      u(a), v(b) {}
DanglingEndpoint::DanglingEndpoint(VertexId x)
    : Error("edge endpoint " + std::to_string(x) + " is not a vertex"), v(x) {}
EdgeNotFound::EdgeNotFound(VertexId a, VertexId b)
    : Error("no edge " + std::to_string(a) + "-" + std::to_string(b)), u(a), v(b) {}

Graph Graph::build(std::vector<VertexSpec> vertices,
                   const std::vector<std::pair<VertexId, VertexId>>& edges) {
  Graph g;
  g.vertices_ = std::move(vertices);
  const int n = g.num_vertices();
  g.edges_.reserve(edges.size());
  std::vector<int32_t> deg(n, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n) throw DanglingEndpoint(u);
    if (v < 0 || v >= n) throw DanglingEndpoint(v);
    if (u == v) throw DuplicateEdge(u, v);
    auto [it, fresh] = g.edge_index_.emplace(pair_key(u, v), g.num_edges());
    if (!fresh) throw DuplicateEdge(u, v);
    g.edges_.push_back({u, v});
    ++deg[u];
    ++deg[v];
  }
  g.adj_offset_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) g.adj_offset_[v + 1] = g.adj_offset_[v] + deg[v];
  g.adj_.assign(g.adj_offset_[n], 0);
  std::vector<int32_t> fill(g.adj_offset_.begin(), g.adj_offset_.end() - 1);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    g.adj_[fill[g.edges_[e].u]++] = e;
    g.adj_[fill[g.edges_[e].v]++] = e;
  }
  for (int v = 0; v < n; ++v) {
    auto* first = g.adj_.data() + g.adj_offset_[v];
    auto* last = g.adj_.data() + g.adj_offset_[v + 1];
    std::sort(first, last, [&](EdgeId a, EdgeId b) {
      return g.edges_[a].other(v) < g.edges_[b].other(v);
    });
  }
  for (int v = 0; v < n; ++v) {
    if (!g.vertices_[v].id.empty()) g.id_index_.emplace(g.vertices_[v].id, v);
  }
  return g;
}

std::span<const EdgeId> Graph::incident(VertexId v) const {
  return {adj_.data() + adj_offset_[v], adj_.data() + adj_offset_[v + 1]};
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
  auto it = edge_index_.find(pair_key(u, v));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

EdgeId Graph::edge_between(VertexId u, VertexId v) const {
  auto e = find_edge(u, v);
  if (!e) throw EdgeNotFound(u, v);
  return *e;
}

std::optional<VertexId> Graph::find_vertex(const std::string& id) const {
  auto it = id_index_.find(id);
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

namespace {
struct Fnv {
  uint64_t h = 1469598103934665603ull;
  void byte(uint8_t b) {
    h ^= b;
    h *= 1099511628211ull;
  }
  void u32(uint32_t x) {
    for (int i = 0; i < 4; ++i) byte(static_cast<uint8_t>(x >> (8 * i)));
  }
  void str(const std::string& s) {
    u32(static_cast<uint32_t>(s.size()));
    for (char c : s) byte(static_cast<uint8_t>(c));
  }
};
}  // namespace

uint64_t Graph::content_hash() const {
  Fnv f;
  f.u32(static_cast<uint32_t>(num_vertices()));
  for (const auto& v : vertices_) {
    f.str(v.id);
    f.byte(static_cast<uint8_t>(v.side));
  }
  f.u32(static_cast<uint32_t>(num_edges()));
  for (const auto& e : edges_) {
    f.u32(static_cast<uint32_t>(e.u));
    f.u32(static_cast<uint32_t>(e.v));
  }
  return f.h;
}

std::string Graph::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(content_hash()));
  return buf;
}

BipartiteGraph BipartiteGraph::build(std::vector<VertexSpec> vertices,
                                     const std::vector<std::pair<VertexId, VertexId>>& edges) {
  return from(Graph::build(std::move(vertices), edges));
}

BipartiteGraph BipartiteGraph::from(Graph g) {
  for (const auto& e : g.edges()) {
    Side a = g.side(e.u), b = g.side(e.v);
    if (a == Side::kNone || b == Side::kNone || a == b) throw NotBipartite(e.u, e.v);
  }
  BipartiteGraph b;
  static_cast<Graph&>(b) = std::move(g);
  return b;
}

BipartitenessCertificate is_bipartite_certificate(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> color(n, -1), parent(n, -1), depth(n, 0);
  for (int s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (EdgeId e : g.incident(u)) {
        int w = g.edge(e).other(u);
        if (color[w] == -1) {
          color[w] = 1 - color[u];
          parent[w] = u;
          depth[w] = depth[u] + 1;
          q.push_back(w);
        } else if (color[w] == color[u]) {
          // Climb both tree paths to their meeting point.
          std::vector<int> left{u}, right{w};
          int a = u, b = w;
          while (depth[a] > depth[b]) left.push_back(a = parent[a]);
          while (depth[b] > depth[a]) right.push_back(b = parent[b]);
          while (a != b) {
            left.push_back(a = parent[a]);
            right.push_back(b = parent[b]);
          }
          right.pop_back();
          OddClosedWalk walk;
          walk.walk.assign(left.rbegin(), left.rend());
          walk.walk.insert(walk.walk.end(), right.begin(), right.end());
          return walk;
        }
      }
    }
  }
  TwoColoring c;
  c.sides.resize(n);
  for (int v = 0; v < n; ++v) c.sides[v] = color[v] == 0 ? Side::kLeft : Side::kRight;
  return c;
}

SubdivisionResult subdivide_edge(const Graph& g, EdgeId e, int count) {
  if (e < 0 || e >= g.num_edges()) throw EdgeNotFound(-1, -1);
  SubdivisionResult r;
  std::vector<VertexSpec> vs = g.vertices();
  const Edge old = g.edge(e);
  Side s = g.side(old.u);
  for (int i = 0; i < count; ++i) {
    s = opposite(s);
    VertexSpec spec;
    spec.id = "s" + std::to_string(e) + "_" + std::to_string(i + 1);
    spec.side = s;
    r.new_vertices.push_back(static_cast<VertexId>(vs.size()));
    vs.push_back(std::move(spec));
  }
  if (count > 0 && g.side(old.v) != Side::kNone) r.side_flip = (s == g.side(old.v));
  std::vector<std::pair<VertexId, VertexId>> es;
  r.edge_map.assign(g.num_edges(), -1);
  for (EdgeId f = 0; f < g.num_edges(); ++f) {
    if (f == e) continue;
    r.edge_map[f] = static_cast<EdgeId>(es.size());
    es.emplace_back(g.edge(f).u, g.edge(f).v);
  }
  VertexId prev = old.u;
  for (VertexId x : r.new_vertices) {
    es.emplace_back(prev, x);
    prev = x;
  }
  es.emplace_back(prev, old.v);
  r.graph = Graph::build(std::move(vs), es);
  return r;
}

DirectedGraph::DirectedGraph(int n, std::vector<std::pair<int, int>> arcs)
    : n_(n), arcs_(std::move(arcs)), out_(n), in_(n) {
  for (int a = 0; a < num_arcs(); ++a) {
    auto [u, v] = arcs_[a];
    if (u < 0 || u >= n) throw DanglingEndpoint(u);
    if (v < 0 || v >= n) throw DanglingEndpoint(v);
    if (u == v) throw DuplicateEdge(u, v);
    out_[u].push_back(a);
    in_[v].push_back(a);
  }
  for (int v = 0; v < n; ++v) {
    std::sort(out_[v].begin(), out_[v].end(),
              [&](int a, int b) { return arcs_[a].second < arcs_[b].second; });
    for (size_t i = 1; i < out_[v].size(); ++i)
      if (arcs_[out_[v][i]].second == arcs_[out_[v][i - 1]].second)
        throw DuplicateEdge(v, arcs_[out_[v][i]].second);
    std::sort(in_[v].begin(), in_[v].end(),
              [&](int a, int b) { return arcs_[a].first < arcs_[b].first; });
  }
}

std::optional<int> DirectedGraph::find_arc(int u, int v) const {
  for (int a : out_[u])
    if (arcs_[a].second == v) return a;
  return std::nullopt;
}

}  // namespace bpm
