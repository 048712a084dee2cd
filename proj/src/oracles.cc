#include "bpm/oracles.h"

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>

namespace bpm {

namespace {

// ---- directed search ------------------------------------------------------

class DirectedSearch {
 public:
  DirectedSearch(const DirectedGraph& g, const ArcConstraints& c)
      : g_(g), n_(g.num_vertices()), allowed_(g.num_arcs(), 1), req_out_(n_, -1), req_in_(n_, -1) {
    for (int a : c.forbidden) allowed_.at(a) = 0;
    for (int a : c.required) {
      if (!allowed_.at(a)) {
        infeasible_ = true;
        continue;
      }
      auto [u, v] = g.arc(a);
      if ((req_out_[u] >= 0 && req_out_[u] != a) || (req_in_[v] >= 0 && req_in_[v] != a))
        infeasible_ = true;
      req_out_[u] = a;
      req_in_[v] = a;
    }
  }

  std::optional<std::vector<int>> run() {
    if (infeasible_ || n_ == 0) return std::nullopt;
    if (n_ == 1) return std::nullopt;  // no loops, so no cycle
    visited_.assign(n_, 0);
    path_ = {0};
    visited_[0] = 1;
    if (dfs()) return path_;
    return std::nullopt;
  }

 private:
  bool arc_ok(int a) const {
    if (!allowed_[a]) return false;
    auto [u, v] = g_.arc(a);
    if (req_out_[u] >= 0 && req_out_[u] != a) return false;
    if (req_in_[v] >= 0 && req_in_[v] != a) return false;
    return true;
  }

  // Every unvisited vertex still needs a usable way in and a way out.
  bool feasible(int head) const {
    for (int x = 0; x < n_; ++x) {
      if (visited_[x]) continue;
      bool in = false, out = false;
      for (int a : g_.in_arcs(x)) {
        int y = g_.arc(a).first;
        if (arc_ok(a) && (!visited_[y] || y == head)) in = true;
      }
      for (int a : g_.out_arcs(x)) {
        int y = g_.arc(a).second;
        if (arc_ok(a) && (!visited_[y] || y == 0)) out = true;
      }
      if (!in || !out) return false;
    }
    return true;
  }

  bool dfs() {
    const int head = path_.back();
    if (static_cast<int>(path_.size()) == n_) {
      auto a = g_.find_arc(head, 0);
      return a && arc_ok(*a);
    }
    if (!feasible(head)) return false;
    for (int a : g_.out_arcs(head)) {
      int v = g_.arc(a).second;
      if (visited_[v] || !arc_ok(a)) continue;
      visited_[v] = 1;
      path_.push_back(v);
      if (dfs()) return true;
      path_.pop_back();
      visited_[v] = 0;
    }
    return false;
  }

  const DirectedGraph& g_;
  int n_;
  std::vector<char> allowed_;
  std::vector<int> req_out_, req_in_;
  bool infeasible_ = false;
  std::vector<char> visited_;
  std::vector<int> path_;
};

// ---- undirected search ----------------------------------------------------
//
// Edges are unknown, in or out. Propagation to a fixpoint: a vertex with two
// edges in drops the rest, a vertex with exactly two candidates takes both,
// an edge closing a path fragment early is dropped, and the graph of
// candidate edges must stay biconnected. Branching picks the most
// constrained vertex and tries its candidate edges in neighbour order.

class UndirectedSearch {
 public:
  UndirectedSearch(const Graph& g, const std::vector<EdgeId>& required,
                   const std::vector<EdgeId>& forbidden)
      : g_(g), n_(g.num_vertices()) {
    std::vector<int8_t> st(g.num_edges(), kUnknown);
    for (EdgeId e : forbidden) st.at(e) = kOut;
    for (EdgeId e : required) {
      if (st.at(e) == kOut) infeasible_ = true;
      st[e] = kIn;
    }
    root_ = std::move(st);
  }

  std::optional<std::vector<VertexId>> run() {
    if (infeasible_ || n_ < 3) return std::nullopt;
    std::vector<int8_t> st = root_;
    if (!solve(st)) return std::nullopt;
    return tour(answer_);
  }

 private:
  static constexpr int8_t kUnknown = 0, kIn = 1, kOut = -1;

  bool solve(std::vector<int8_t>& st) {
    if (!propagate(st)) return false;
    // Most constrained vertex: an open path end first, then fewest candidates.
    VertexId pick = -1;
    int best_key = 1 << 30;
    for (VertexId v = 0; v < n_; ++v) {
      int in = 0, unk = 0;
      for (EdgeId e : g_.incident(v)) {
        if (st[e] == kIn) ++in;
        else if (st[e] == kUnknown) ++unk;
      }
      if (in == 2 || unk == 0) continue;
      int key = (in == 1 ? 0 : 1 << 20) + unk;
      if (key < best_key) {
        best_key = key;
        pick = v;
      }
    }
    if (pick < 0) {
      answer_ = st;
      return true;
    }
    std::vector<EdgeId> cand;
    for (EdgeId e : g_.incident(pick))
      if (st[e] == kUnknown) cand.push_back(e);
    for (size_t i = 0; i < cand.size(); ++i) {
      std::vector<int8_t> next = st;
      for (size_t j = 0; j < i; ++j) next[cand[j]] = kOut;
      next[cand[i]] = kIn;
      if (solve(next)) return true;
    }
    return false;
  }

  bool propagate(std::vector<int8_t>& st) {
    for (bool changed = true; changed;) {
      changed = false;
      for (VertexId v = 0; v < n_; ++v) {
        int in = 0, unk = 0;
        for (EdgeId e : g_.incident(v)) {
          if (st[e] == kIn) ++in;
          else if (st[e] == kUnknown) ++unk;
        }
        if (in > 2 || in + unk < 2) return false;
        if (unk == 0) continue;
        if (in == 2 || in + unk == 2) {
          const int8_t to = in == 2 ? kOut : kIn;
          for (EdgeId e : g_.incident(v))
            if (st[e] == kUnknown) st[e] = to;
          changed = true;
        }
      }
      if (changed) continue;
      int closes = fragments(st);
      if (closes < 0) return false;
      if (closes > 0) changed = true;
    }
    return biconnected(st);
  }

  // Walks the fragments formed by the in edges. A closed fragment is only
  // allowed when it is the whole tour. Drops unknown edges that would close
  // a fragment early. Returns -1 on failure, else the number of dropped edges.
  int fragments(std::vector<int8_t>& st) {
    std::vector<std::array<VertexId, 2>> nb(n_, {-1, -1});
    for (EdgeId e = 0; e < g_.num_edges(); ++e) {
      if (st[e] != kIn) continue;
      const auto& ed = g_.edge(e);
      nb[ed.u][nb[ed.u][0] < 0 ? 0 : 1] = ed.v;
      nb[ed.v][nb[ed.v][0] < 0 ? 0 : 1] = ed.u;
    }
    std::vector<char> seen(n_, 0);
    int dropped = 0;
    for (VertexId s = 0; s < n_; ++s) {
      if (seen[s] || nb[s][0] < 0) continue;
      if (nb[s][1] >= 0) continue;  // start fragments at their ends
      VertexId prev = -1, cur = s;
      int size = 0;
      while (true) {
        seen[cur] = 1;
        ++size;
        VertexId nx = nb[cur][0] != prev ? nb[cur][0] : nb[cur][1];
        if (nx < 0) break;
        prev = cur;
        cur = nx;
      }
      if (size < n_) {
        if (auto e = g_.find_edge(s, cur); e && st[*e] == kUnknown) {
          st[*e] = kOut;
          ++dropped;
        }
      }
    }
    for (VertexId s = 0; s < n_; ++s) {
      if (seen[s] || nb[s][0] < 0) continue;
      // Every vertex left has two in edges: a closed fragment.
      VertexId prev = -1, cur = s;
      int size = 0;
      do {
        seen[cur] = 1;
        ++size;
        VertexId nx = nb[cur][0] != prev ? nb[cur][0] : nb[cur][1];
        prev = cur;
        cur = nx;
      } while (cur != s);
      if (size < n_) return -1;
    }
    return dropped;
  }

  // Candidate graph (in and unknown edges) must be connected without
  // articulation points.
  bool biconnected(const std::vector<int8_t>& st) {
    std::vector<int> disc(n_, -1), low(n_, 0);
    std::vector<size_t> it(n_, 0);
    std::vector<VertexId> parent(n_, -1);
    std::vector<VertexId> stack{0};
    disc[0] = low[0] = 0;
    int time = 1, root_children = 0;
    while (!stack.empty()) {
      VertexId u = stack.back();
      auto inc = g_.incident(u);
      if (it[u] < inc.size()) {
        EdgeId e = inc[it[u]++];
        if (st[e] == kOut) continue;
        VertexId w = g_.edge(e).other(u);
        if (disc[w] < 0) {
          parent[w] = u;
          disc[w] = low[w] = time++;
          if (u == 0) ++root_children;
          stack.push_back(w);
        } else if (w != parent[u]) {
          low[u] = std::min(low[u], disc[w]);
        }
      } else {
        stack.pop_back();
        VertexId p = parent[u];
        if (p >= 0) {
          low[p] = std::min(low[p], low[u]);
          if (p != 0 && low[u] >= disc[p]) return false;
        }
      }
    }
    if (time != n_) return false;
    return root_children <= 1;
  }

  std::vector<VertexId> tour(const std::vector<int8_t>& st) const {
    std::vector<std::vector<VertexId>> nb(n_);
    for (EdgeId e = 0; e < g_.num_edges(); ++e)
      if (st[e] == kIn) {
        nb[g_.edge(e).u].push_back(g_.edge(e).v);
        nb[g_.edge(e).v].push_back(g_.edge(e).u);
      }
    std::vector<VertexId> order{0};
    VertexId prev = 0, cur = std::min(nb[0][0], nb[0][1]);
    while (cur != 0) {
      order.push_back(cur);
      VertexId nx = nb[cur][0] != prev ? nb[cur][0] : nb[cur][1];
      prev = cur;
      cur = nx;
    }
    return order;
  }

  const Graph& g_;
  int n_;
  bool infeasible_ = false;
  std::vector<int8_t> root_, answer_;
};

}  // namespace

std::optional<std::vector<int>> ham_cycle_directed(const DirectedGraph& g, const ArcConstraints& c) {
  return DirectedSearch(g, c).run();
}

std::optional<std::vector<VertexId>> ham_cycle_undirected(const Graph& g,
                                                          const std::vector<EdgeId>& required,
                                                          const std::vector<EdgeId>& forbidden) {
  return UndirectedSearch(g, required, forbidden).run();
}

bool is_ham_cycle(const DirectedGraph& g, const std::vector<int>& order) {
  const int n = g.num_vertices();
  if (static_cast<int>(order.size()) != n || n < 2) return false;
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (!g.find_arc(order[i], order[(i + 1) % n])) return false;
  return true;
}

bool is_ham_cycle(const Graph& g, const std::vector<VertexId>& order) {
  const int n = g.num_vertices();
  if (static_cast<int>(order.size()) != n || n < 3) return false;
  std::vector<char> seen(n, 0);
  for (VertexId v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (!g.find_edge(order[i], order[(i + 1) % n])) return false;
  return true;
}

bool respects_pattern(const HamInstance& inst, const std::vector<int>& order, const Pattern& p) {
  if (!is_ham_cycle(inst.graph, order)) return false;
  check_pattern(inst, p);
  const int n = inst.n();
  std::set<int> used;
  for (int i = 0; i < n; ++i) used.insert(*inst.graph.find_arc(order[i], order[(i + 1) % n]));
  for (int i = 0; i < inst.k(); ++i) {
    auto [e, f] = inst.pairs[i];
    if (used.count(e) != (p.picks_e[i] ? 1u : 0u)) return false;
    if (used.count(f) != (p.picks_e[i] ? 0u : 1u)) return false;
  }
  return true;
}

std::optional<std::vector<int>> ham_cycle_respecting(const HamInstance& inst, const Pattern& p) {
  check_pattern(inst, p);
  ArcConstraints c;
  for (int i = 0; i < inst.k(); ++i) {
    auto [e, f] = inst.pairs[i];
    c.required.push_back(p.picks_e[i] ? e : f);
    c.forbidden.push_back(p.picks_e[i] ? f : e);
  }
  return ham_cycle_directed(inst.graph, c);
}

ForallExistsResult forall_exists_decision(const HamInstance& inst, int max_pairs) {
  if (inst.k() > max_pairs)
    throw TooManyPairs(std::to_string(inst.k()) + " pairs exceed the enumeration limit of " +
                       std::to_string(max_pairs));
  ForallExistsResult r;
  for (uint64_t bits = 0; bits < (uint64_t{1} << inst.k()); ++bits) {
    PatternWitness w;
    w.pattern = pattern_from_index(inst.k(), bits);
    w.cycle = ham_cycle_respecting(inst, w.pattern);
    if (!w.cycle && r.yes) {
      r.yes = false;
      r.refuting = w.pattern;
    }
    r.table.push_back(std::move(w));
  }
  return r;
}

int count_satisfied(const CnfFormula& f, uint64_t assignment) {
  int sat = 0;
  for (const auto& c : f.clauses) {
    for (int l : c) {
      bool val = (assignment >> (std::abs(l) - 1)) & 1;
      if (val == (l > 0)) {
        ++sat;
        break;
      }
    }
  }
  return sat;
}

CnfResult cnf_brute_force(const CnfFormula& f, int max_vars) {
  f.validate();
  if (f.num_vars > max_vars)
    throw TooManyVariables(std::to_string(f.num_vars) + " variables exceed the limit of " +
                           std::to_string(max_vars));
  CnfResult r;
  r.max_satisfied = -1;
  uint64_t best = 0;
  for (uint64_t a = 0; a < (uint64_t{1} << f.num_vars); ++a) {
    int s = count_satisfied(f, a);
    if (s > r.max_satisfied) {
      r.max_satisfied = s;
      best = a;
      if (s == static_cast<int>(f.clauses.size())) break;
    }
  }
  r.satisfiable = r.max_satisfied == static_cast<int>(f.clauses.size());
  r.best.assign(f.num_vars + 1, false);
  for (int i = 1; i <= f.num_vars; ++i) r.best[i] = (best >> (i - 1)) & 1;
  return r;
}

WalkRecord make_walk_record(const Graph& g, std::vector<VertexId> walk) {
  const int m = static_cast<int>(walk.size());
  for (VertexId v : walk)
    if (v < 0 || v >= g.num_vertices()) throw InvalidWalk("walk leaves the graph");
  if (m == 1) throw InvalidWalk("a closed walk of length one needs a loop");
  for (int i = 0; i < m && m > 1; ++i)
    if (!g.find_edge(walk[i], walk[(i + 1) % m]))
      throw InvalidWalk("walk steps along a non-edge " + std::to_string(walk[i]) + " - " +
                        std::to_string(walk[(i + 1) % m]));
  WalkRecord r;
  r.walk = std::move(walk);
  r.visits.assign(g.num_vertices(), 0);
  for (VertexId v : r.walk) ++r.visits[v];
  int top = 1;
  for (int c : r.visits) top = std::max(top, c);
  r.levels.assign(top + 1, {});
  for (VertexId v = 0; v < g.num_vertices(); ++v) r.levels[r.visits[v]].push_back(v);
  return r;
}

EpsGood eps_good_check(const WalkRecord& w, Rational eps, int n) {
  if (n != static_cast<int>(w.visits.size())) throw InvalidWalk("walk belongs to another graph");
  EpsGood r;
  r.w1 = w.w1();
  r.good = Rational(r.w1) >= (Rational(1) - eps) * Rational(n);
  return r;
}

namespace {

// Whether `from` can still get back to `target` through unblocked vertices.
// `seen` marks everything the search reached.
bool reaches(const std::vector<std::vector<std::pair<VertexId, EdgeId>>>& adj, VertexId from,
             VertexId target, const std::vector<char>& blocked, std::vector<char>& seen) {
  std::fill(seen.begin(), seen.end(), 0);
  std::vector<VertexId> stack{from};
  seen[from] = 1;
  bool hit = false;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (auto [w, e] : adj[u]) {
      if (w == target) {
        hit = true;
        continue;
      }
      if (blocked[w] || seen[w]) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  return hit;
}

std::vector<std::vector<std::pair<VertexId, EdgeId>>> allowed_adjacency(
    const Graph& g, const std::function<bool(EdgeId)>& allowed) {
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(g.num_vertices());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!allowed(e)) continue;
    adj[g.edge(e).u].emplace_back(g.edge(e).v, e);
    adj[g.edge(e).v].emplace_back(g.edge(e).u, e);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

}  // namespace

size_t for_each_simple_cycle(const Graph& g, const std::function<bool(EdgeId)>& allowed,
                             const std::function<bool(const std::vector<VertexId>&)>& fn) {
  const int n = g.num_vertices();
  auto adj = allowed_adjacency(g, allowed);
  size_t count = 0;
  bool stop = false;
  std::vector<char> blocked(n, 0), seen(n, 0);
  std::vector<VertexId> path;
  // Cycles are rooted at their smallest vertex and reported once, in the
  // direction whose second vertex is smaller than the last. Vertices below
  // the root and on the path are blocked; a branch that cannot get back to
  // the root is cut.
  std::function<void(VertexId, VertexId)> dfs = [&](VertexId s, VertexId u) {
    for (auto [v, e] : adj[u]) {
      if (stop) return;
      if (v == s) {
        if (path.size() >= 3 && path[1] < path.back()) {
          ++count;
          if (!fn(path)) stop = true;
        }
        continue;
      }
      if (blocked[v]) continue;
      blocked[v] = 1;
      path.push_back(v);
      if (reaches(adj, v, s, blocked, seen)) dfs(s, v);
      path.pop_back();
      blocked[v] = 0;
    }
  };
  for (VertexId s = 0; s < n && !stop; ++s) {
    blocked[s] = 1;
    path = {s};
    dfs(s, s);
  }
  return count;
}

namespace {

// Simple cycles through a fixed edge set, by edge states. Every vertex ends
// with degree 0 or 2; an open path end with one candidate takes it, a
// vertex that could only be entered and never left drops its edge, and all
// in edges must stay connected. Branching extends the most constrained open
// path end, so each cycle is produced exactly once.
class CycleThrough {
 public:
  CycleThrough(const Graph& g, const std::function<bool(EdgeId)>& allowed,
               const std::vector<EdgeId>& required,
               const std::function<bool(const std::vector<VertexId>&)>& fn)
      : g_(g), n_(g.num_vertices()), fn_(fn), start_(g.edge(required.front()).u) {
    root_.assign(g.num_edges(), kOut);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (allowed(e)) root_[e] = kUnknown;
    for (EdgeId e : required) {
      if (root_.at(e) == kOut) feasible_ = false;
      root_[e] = kIn;
    }
  }

  size_t run() {
    if (feasible_) {
      std::vector<int8_t> st = root_;
      solve(st);
    }
    return count_;
  }

 private:
  static constexpr int8_t kUnknown = 0, kIn = 1, kOut = -1;

  void solve(std::vector<int8_t>& st) {
    if (stop_) return;
    int closed = propagate(st);
    if (closed < 0) return;
    if (closed == 1) {
      ++count_;
      if (!fn_(tour(st))) stop_ = true;
      return;
    }
    VertexId pick = -1;
    int best = 1 << 30;
    for (VertexId v = 0; v < n_; ++v) {
      int in = 0, unk = 0;
      for (EdgeId e : g_.incident(v)) {
        if (st[e] == kIn) ++in;
        else if (st[e] == kUnknown) ++unk;
      }
      if (in == 1 && unk < best) {
        best = unk;
        pick = v;
      }
    }
    if (pick < 0) return;
    std::vector<EdgeId> cand;
    for (EdgeId e : g_.incident(pick))
      if (st[e] == kUnknown) cand.push_back(e);
    for (size_t i = 0; i < cand.size() && !stop_; ++i) {
      std::vector<int8_t> next = st;
      for (size_t j = 0; j < i; ++j) next[cand[j]] = kOut;
      next[cand[i]] = kIn;
      solve(next);
    }
  }

  // -1: dead end, 1: the in edges form one cycle (all else dropped), 0: open.
  int propagate(std::vector<int8_t>& st) {
    for (bool changed = true; changed;) {
      changed = false;
      for (VertexId v = 0; v < n_; ++v) {
        int in = 0, unk = 0;
        EdgeId last = -1;
        for (EdgeId e : g_.incident(v)) {
          if (st[e] == kIn) ++in;
          else if (st[e] == kUnknown) ++unk, last = e;
        }
        if (in > 2 || (in == 1 && unk == 0)) return -1;
        if (unk == 0) continue;
        if (in == 2) {
          for (EdgeId e : g_.incident(v))
            if (st[e] == kUnknown) st[e] = kOut;
          changed = true;
        } else if (unk == 1) {
          st[last] = in == 1 ? kIn : kOut;
          changed = true;
        }
      }
    }
    // Fragments of the in edges.
    std::vector<int> comp(n_, -1);
    int fragments = 0;
    bool cycle = false;
    for (EdgeId e = 0; e < g_.num_edges(); ++e) {
      if (st[e] != kIn || comp[g_.edge(e).u] >= 0) continue;
      std::vector<VertexId> stack{g_.edge(e).u};
      comp[g_.edge(e).u] = fragments;
      bool open = false;
      while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        int in = 0;
        for (EdgeId f : g_.incident(u)) {
          if (st[f] != kIn) continue;
          ++in;
          VertexId w = g_.edge(f).other(u);
          if (comp[w] < 0) {
            comp[w] = fragments;
            stack.push_back(w);
          }
        }
        if (in == 1) open = true;
      }
      if (!open) cycle = true;
      ++fragments;
    }
    if (cycle) {
      if (fragments > 1) return -1;
      for (auto& s : st)
        if (s == kUnknown) s = kOut;
      return 1;
    }
    // All fragments must be joinable through candidate edges.
    std::vector<char> seen(n_, 0);
    VertexId from = -1;
    for (VertexId v = 0; v < n_ && from < 0; ++v)
      if (comp[v] >= 0) from = v;
    std::vector<VertexId> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (EdgeId f : g_.incident(u)) {
        if (st[f] == kOut) continue;
        VertexId w = g_.edge(f).other(u);
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    for (VertexId v = 0; v < n_; ++v)
      if (comp[v] >= 0 && !seen[v]) return -1;
    return 0;
  }

  std::vector<VertexId> tour(const std::vector<int8_t>& st) const {
    std::vector<VertexId> order{start_};
    VertexId prev = -1, cur = start_;
    while (true) {
      VertexId nx = -1;
      for (EdgeId e : g_.incident(cur)) {
        if (st[e] != kIn) continue;
        VertexId w = g_.edge(e).other(cur);
        if (w != prev) {
          nx = w;
          break;
        }
      }
      if (nx == start_ || nx < 0) break;
      order.push_back(nx);
      prev = cur;
      cur = nx;
    }
    return order;
  }

  const Graph& g_;
  int n_;
  const std::function<bool(const std::vector<VertexId>&)>& fn_;
  VertexId start_;
  bool feasible_ = true, stop_ = false;
  size_t count_ = 0;
  std::vector<int8_t> root_;
};

}  // namespace

size_t for_each_cycle_through(const Graph& g, const std::function<bool(EdgeId)>& allowed,
                              const std::vector<EdgeId>& required,
                              const std::function<bool(const std::vector<VertexId>&)>& fn) {
  if (required.empty()) return for_each_simple_cycle(g, allowed, fn);
  return CycleThrough(g, allowed, required, fn).run();
}

}  // namespace bpm
