#include "bpm/matching.h"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace bpm {

CapExceeded::CapExceeded(size_t n)
    : Error("perfect matching cap exceeded after " + std::to_string(n) + " matchings"),
      found(n) {}
BudgetExceeded::BudgetExceeded(size_t n)
    : Error("state budget exceeded after " + std::to_string(n) + " states"), explored(n) {}
NoPerfectMatching::NoPerfectMatching() : Error("graph has no perfect matching") {}

EdgeSet make_edge_set(std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

EdgeSet symmetric_difference(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_perfect_matching(const Graph& g, const EdgeSet& edges) {
  std::vector<char> covered(g.num_vertices(), 0);
  for (EdgeId e : edges) {
    if (e < 0 || e >= g.num_edges()) return false;
    const Edge& ed = g.edge(e);
    if (covered[ed.u] || covered[ed.v]) return false;
    covered[ed.u] = covered[ed.v] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

PerfectMatching make_matching(const Graph& g, std::vector<EdgeId> edges) {
  PerfectMatching m{make_edge_set(std::move(edges)), g.content_hash()};
  if (!is_perfect_matching(g, m.edges)) throw NotPerfect("edge set is not a perfect matching");
  return m;
}

PerfectMatching matching_from_pairs(const Graph& g,
                                    const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  std::vector<EdgeId> es;
  es.reserve(pairs.size());
  for (auto [u, v] : pairs) es.push_back(g.edge_between(u, v));
  return make_matching(g, std::move(es));
}

std::vector<EdgeId> mate_edges(const Graph& g, const EdgeSet& m) {
  std::vector<EdgeId> mate(g.num_vertices(), -1);
  for (EdgeId e : m) {
    mate[g.edge(e).u] = e;
    mate[g.edge(e).v] = e;
  }
  return mate;
}

std::vector<PerfectMatching> enumerate_perfect_matchings(const Graph& g, size_t cap) {
  const int n = g.num_vertices();
  std::vector<PerfectMatching> out;
  if (n % 2 != 0) return out;
  const uint64_t hash = g.content_hash();
  std::vector<char> used(n, 0);
  std::vector<EdgeId> chosen;
  chosen.reserve(n / 2);
  // Branch on the unmatched vertex with the fewest free neighbours.
  std::function<void(int)> rec = [&](int remaining) {
    if (remaining == 0) {
      if (out.size() >= cap) throw CapExceeded(out.size());
      out.push_back({make_edge_set(chosen), hash});
      return;
    }
    int best = -1, best_deg = 1 << 30;
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      int d = 0;
      for (EdgeId e : g.incident(v))
        if (!used[g.edge(e).other(v)]) ++d;
      if (d < best_deg) {
        best_deg = d;
        best = v;
        if (d <= 1) break;
      }
    }
    if (best_deg == 0) return;
    used[best] = 1;
    for (EdgeId e : g.incident(best)) {
      int w = g.edge(e).other(best);
      if (used[w]) continue;
      used[w] = 1;
      chosen.push_back(e);
      rec(remaining - 2);
      chosen.pop_back();
      used[w] = 0;
    }
    used[best] = 0;
  };
  rec(n);
  std::sort(out.begin(), out.end(),
            [](const PerfectMatching& a, const PerfectMatching& b) { return a.edges < b.edges; });
  return out;
}

AlternatingCycleSet decompose_symmetric_difference(const Graph& g, const PerfectMatching& m,
                                                   const PerfectMatching& n) {
  if (m.graph_hash != n.graph_hash || m.graph_hash != g.content_hash())
    throw MatchingMismatch("matchings belong to different graphs");
  EdgeSet diff = symmetric_difference(m.edges, n.edges);
  std::vector<std::vector<EdgeId>> inc(g.num_vertices());
  for (EdgeId e : diff) {
    inc[g.edge(e).u].push_back(e);
    inc[g.edge(e).v].push_back(e);
  }
  std::vector<char> seen(g.num_edges(), 0);
  AlternatingCycleSet out;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (inc[s].empty() || seen[inc[s][0]]) continue;
    AlternatingCycle c;
    VertexId v = s;
    EdgeId e = inc[s][0];
    while (!seen[e]) {
      seen[e] = 1;
      c.vertices.push_back(v);
      c.edges.push_back(e);
      v = g.edge(e).other(v);
      e = inc[v][0] == e ? inc[v][1] : inc[v][0];
    }
    std::sort(c.edges.begin(), c.edges.end());
    out.push_back(std::move(c));
  }
  return out;
}

bool is_adjacent(const Graph& g, const PerfectMatching& m, const PerfectMatching& n) {
  return decompose_symmetric_difference(g, m, n).size() == 1;
}

PerfectMatching flip(const PerfectMatching& m, const EdgeSet& cycle) {
  return {symmetric_difference(m.edges, cycle), m.graph_hash};
}

namespace {

// Digraph on the left vertices: l -> l' when l is joined to mate(l') by a
// non-matching edge. Its cycles are exactly the M-alternating cycles.
struct ExchangeDigraph {
  std::vector<VertexId> left;
  std::vector<int> pos;  // vertex -> index in `left`, -1 for right vertices
  struct Arc {
    int to;
    EdgeId free_edge, matched_edge;
  };
  std::vector<std::vector<Arc>> out;

  ExchangeDigraph(const Graph& g, const EdgeSet& m) {
    const int n = g.num_vertices();
    pos.assign(n, -1);
    for (VertexId v = 0; v < n; ++v) {
      if (g.side(v) == Side::kNone) throw Error("alternating cycles need side labels");
      if (g.side(v) == Side::kLeft) {
        pos[v] = static_cast<int>(left.size());
        left.push_back(v);
      }
    }
    std::vector<EdgeId> mate = mate_edges(g, m);
    out.resize(left.size());
    for (size_t i = 0; i < left.size(); ++i) {
      VertexId l = left[i];
      for (EdgeId e : g.incident(l)) {
        if (e == mate[l]) continue;
        VertexId r = g.edge(e).other(l);
        if (mate[r] < 0) continue;
        VertexId l2 = g.edge(mate[r]).other(r);
        out[i].push_back({pos[l2], e, mate[r]});
      }
    }
  }
};

}  // namespace

void for_each_alternating_cycle(const Graph& g, const PerfectMatching& m,
                                const std::function<bool(const EdgeSet&)>& fn) {
  ExchangeDigraph d(g, m.edges);
  const int k = static_cast<int>(d.left.size());
  std::vector<std::vector<int>> in(k);
  for (int u = 0; u < k; ++u)
    for (const auto& a : d.out[u]) in[a.to].push_back(u);
  std::vector<char> reach(k), on_path(k, 0);
  std::vector<const ExchangeDigraph::Arc*> path;
  bool stop = false;
  for (int s = 0; s < k && !stop; ++s) {
    // Vertices >= s that can still return to s.
    std::fill(reach.begin(), reach.end(), 0);
    std::deque<int> q{s};
    reach[s] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : in[x])
        if (y > s && !reach[y]) {
          reach[y] = 1;
          q.push_back(y);
        }
    }
    std::function<void(int)> dfs = [&](int u) {
      on_path[u] = 1;
      for (const auto& a : d.out[u]) {
        if (stop) break;
        if (a.to == s) {
          EdgeSet c;
          c.reserve(2 * path.size() + 2);
          for (const auto* p : path) {
            c.push_back(p->free_edge);
            c.push_back(p->matched_edge);
          }
          c.push_back(a.free_edge);
          c.push_back(a.matched_edge);
          std::sort(c.begin(), c.end());
          if (!fn(c)) stop = true;
        } else if (a.to > s && reach[a.to] && !on_path[a.to]) {
          path.push_back(&a);
          dfs(a.to);
          path.pop_back();
        }
      }
      on_path[u] = 0;
    };
    dfs(s);
  }
}

std::vector<PerfectMatching> alternating_cycle_neighbors(const Graph& g,
                                                         const PerfectMatching& m) {
  std::vector<PerfectMatching> out;
  for_each_alternating_cycle(g, m, [&](const EdgeSet& c) {
    out.push_back(flip(m, c));
    return true;
  });
  std::sort(out.begin(), out.end(),
            [](const PerfectMatching& a, const PerfectMatching& b) { return a.edges < b.edges; });
  return out;
}

std::vector<PerfectMatching> pairwise_neighbors(const Graph& g, const PerfectMatching& m,
                                                const std::vector<PerfectMatching>& all) {
  std::vector<PerfectMatching> out;
  for (const auto& n : all)
    if (!(n == m) && is_adjacent(g, m, n)) out.push_back(n);
  std::sort(out.begin(), out.end(),
            [](const PerfectMatching& a, const PerfectMatching& b) { return a.edges < b.edges; });
  return out;
}

namespace {
struct VecHash {
  size_t operator()(const EdgeSet& v) const {
    uint64_t h = 1469598103934665603ull;
    for (EdgeId x : v) {
      h ^= static_cast<uint32_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};
}  // namespace

FlipDistanceResult flip_distance(const Graph& g, const PerfectMatching& m,
                                 const PerfectMatching& n, size_t budget) {
  if (m.graph_hash != n.graph_hash || m.graph_hash != g.content_hash())
    throw MatchingMismatch("matchings belong to different graphs");
  FlipDistanceResult res;
  res.witness.start = m;
  if (m == n) return res;
  std::unordered_map<EdgeSet, int, VecHash> index;
  std::vector<EdgeSet> states{m.edges};
  std::vector<int> parent{-1}, dist{0};
  std::vector<EdgeSet> via{{}};
  index.emplace(m.edges, 0);
  int found = -1;
  for (size_t head = 0; head < states.size() && found < 0; ++head) {
    PerfectMatching cur{states[head], m.graph_hash};
    for_each_alternating_cycle(g, cur, [&](const EdgeSet& c) {
      EdgeSet next = symmetric_difference(cur.edges, c);
      if (index.count(next)) return true;
      if (states.size() >= budget) throw BudgetExceeded(states.size());
      int id = static_cast<int>(states.size());
      index.emplace(next, id);
      states.push_back(next);
      parent.push_back(static_cast<int>(head));
      dist.push_back(dist[head] + 1);
      via.push_back(c);
      if (next == n.edges) {
        found = id;
        return false;
      }
      return true;
    });
  }
  res.explored = states.size();
  if (found < 0) throw Error("target matching unreachable");
  res.distance = dist[found];
  for (int x = found; parent[x] >= 0; x = parent[x]) res.witness.cycles.push_back(via[x]);
  std::reverse(res.witness.cycles.begin(), res.witness.cycles.end());
  return res;
}

DiameterResult polytope_diameter(const Graph& g, const DiameterOptions& opt) {
  std::vector<PerfectMatching> all = enumerate_perfect_matchings(g, opt.cap);
  if (all.empty()) throw NoPerfectMatching();
  const int k = static_cast<int>(all.size());
  std::unordered_map<EdgeSet, int, VecHash> index;
  for (int i = 0; i < k; ++i) index.emplace(all[i].edges, i);
  std::vector<std::vector<int>> adj(k);
  for (int i = 0; i < k; ++i) {
    for_each_alternating_cycle(g, all[i], [&](const EdgeSet& c) {
      adj[i].push_back(index.at(symmetric_difference(all[i].edges, c)));
      return true;
    });
  }
  struct Best {
    int ecc = -1, from = 0, to = 0;
  };
  std::mutex mu;
  Best best;
  std::atomic<int> next{0};
  auto worker = [&] {
    std::vector<int> dist(k);
    std::deque<int> q;
    for (int s; (s = next.fetch_add(1)) < k;) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[s] = 0;
      q.assign(1, s);
      int far = s;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (dist[u] > dist[far]) far = u;
        for (int w : adj[u])
          if (dist[w] < 0) {
            dist[w] = dist[u] + 1;
            q.push_back(w);
          }
      }
      std::lock_guard<std::mutex> lock(mu);
      if (dist[far] > best.ecc || (dist[far] == best.ecc && s < best.from))
        best = {dist[far], s, far};
    }
  };
  const int workers = std::max(1, opt.workers);
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  DiameterResult r;
  r.diameter = r.circuit_diameter = best.ecc;
  r.num_matchings = all.size();
  r.witness_from = all[best.from];
  r.witness_to = all[best.to];
  // Rebuild one shortest path for the witness pair.
  std::vector<int> parent(k, -2);
  parent[best.from] = -1;
  std::deque<int> q{best.from};
  while (!q.empty() && parent[best.to] == -2) {
    int u = q.front();
    q.pop_front();
    for (int w : adj[u])
      if (parent[w] == -2) {
        parent[w] = u;
        q.push_back(w);
      }
  }
  r.witness.start = all[best.from];
  for (int x = best.to; parent[x] >= 0; x = parent[x])
    r.witness.cycles.push_back(symmetric_difference(all[parent[x]].edges, all[x].edges));
  std::reverse(r.witness.cycles.begin(), r.witness.cycles.end());
  return r;
}

const char* violation_name(Violation v) {
  switch (v) {
    case Violation::kNone: return "none";
    case Violation::kNotACycle: return "NotACycle";
    case Violation::kNotAlternating: return "NotAlternating";
    case Violation::kNotPerfectAfterFlip: return "NotPerfectAfterFlip";
  }
  return "?";
}

std::optional<std::vector<VertexId>> cycle_vertex_order(const Graph& g, const EdgeSet& edges) {
  if (edges.size() < 3) return std::nullopt;
  std::unordered_map<VertexId, std::vector<EdgeId>> inc;
  for (EdgeId e : edges) {
    if (e < 0 || e >= g.num_edges()) return std::nullopt;
    inc[g.edge(e).u].push_back(e);
    inc[g.edge(e).v].push_back(e);
  }
  for (const auto& [v, es] : inc)
    if (es.size() != 2) return std::nullopt;
  VertexId start = g.edge(edges.front()).u;
  std::vector<VertexId> order;
  VertexId v = start;
  EdgeId e = inc[start][0];
  do {
    order.push_back(v);
    v = g.edge(e).other(v);
    const auto& es = inc[v];
    e = es[0] == e ? es[1] : es[0];
  } while (v != start);
  if (order.size() != inc.size()) return std::nullopt;
  return order;
}

ValidationReport validate_flip_sequence(const Graph& g, const PerfectMatching& start,
                                        const std::vector<EdgeSet>& cycles) {
  ValidationReport rep;
  PerfectMatching cur = start;
  for (size_t i = 0; i < cycles.size(); ++i) {
    const EdgeSet& c = cycles[i];
    auto fail = [&](Violation v, std::string why) {
      rep.ok = false;
      rep.failed_index = static_cast<int>(i);
      rep.violation = v;
      rep.detail = std::move(why);
      rep.final_matching = cur;
      return rep;
    };
    if (!std::is_sorted(c.begin(), c.end()) || std::adjacent_find(c.begin(), c.end()) != c.end())
      return fail(Violation::kNotACycle, "edge list not a sorted set");
    auto order = cycle_vertex_order(g, c);
    if (!order) return fail(Violation::kNotACycle, "edges do not form one simple cycle");
    std::vector<EdgeId> mate = mate_edges(g, cur.edges);
    // Each cycle vertex has two cycle edges; alternation means its matching
    // edge is one of them.
    for (VertexId v : *order) {
      if (mate[v] < 0 || !std::binary_search(c.begin(), c.end(), mate[v]))
        return fail(Violation::kNotAlternating,
                    "matching edge of vertex " + g.vertex(v).id + " is not on the cycle");
    }
    PerfectMatching next = flip(cur, c);
    if (!is_perfect_matching(g, next.edges))
      return fail(Violation::kNotPerfectAfterFlip, "flip breaks perfection");
    cur = std::move(next);
  }
  rep.final_matching = cur;
  return rep;
}

std::optional<PerfectMatching> random_perfect_matching(const Graph& g, std::mt19937_64& rng,
                                                       int walk_steps) {
  const int n = g.num_vertices();
  std::vector<VertexId> left;
  for (VertexId v = 0; v < n; ++v)
    if (g.side(v) == Side::kLeft) left.push_back(v);
  if (static_cast<int>(left.size()) * 2 != n) return std::nullopt;
  std::vector<std::vector<EdgeId>> order(n);
  for (VertexId l : left) {
    auto inc = g.incident(l);
    order[l].assign(inc.begin(), inc.end());
    std::shuffle(order[l].begin(), order[l].end(), rng);
  }
  std::vector<EdgeId> mate(n, -1);
  std::vector<int> stamp(n, -1);
  int round = 0;
  std::function<bool(VertexId)> augment = [&](VertexId l) -> bool {
    for (EdgeId e : order[l]) {
      VertexId r = g.edge(e).other(l);
      if (stamp[r] == round) continue;
      stamp[r] = round;
      EdgeId old = mate[r];
      if (old < 0 || augment(g.edge(old).other(r))) {
        mate[r] = e;
        mate[l] = e;
        return true;
      }
    }
    return false;
  };
  std::shuffle(left.begin(), left.end(), rng);
  for (VertexId l : left) {
    ++round;
    if (!augment(l)) return std::nullopt;
  }
  std::vector<EdgeId> es;
  for (VertexId l : left) es.push_back(mate[l]);
  PerfectMatching m = make_matching(g, es);

  for (int step = 0; step < walk_steps; ++step) {
    ExchangeDigraph d(g, m.edges);
    const int k = static_cast<int>(d.left.size());
    std::uniform_int_distribution<int> pick(0, k - 1);
    for (int attempt = 0; attempt < 8; ++attempt) {
      int u = pick(rng);
      std::vector<int> seen_at(k, -1);
      std::vector<const ExchangeDigraph::Arc*> walk;
      bool dead = false;
      while (seen_at[u] < 0) {
        seen_at[u] = static_cast<int>(walk.size());
        if (d.out[u].empty()) {
          dead = true;
          break;
        }
        std::uniform_int_distribution<size_t> a(0, d.out[u].size() - 1);
        walk.push_back(&d.out[u][a(rng)]);
        u = walk.back()->to;
      }
      if (dead) continue;
      EdgeSet c;
      for (size_t i = seen_at[u]; i < walk.size(); ++i) {
        c.push_back(walk[i]->free_edge);
        c.push_back(walk[i]->matched_edge);
      }
      m = flip(m, make_edge_set(c));
      break;
    }
  }
  return m;
}

}  // namespace bpm
