#include "bpm/gadget_models.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace bpm {

namespace {

std::string rname(const char* base, int i) { return std::string(base) + "_" + std::to_string(i); }

bool in_set(const EdgeSet& s, EdgeId e) { return std::binary_search(s.begin(), s.end(), e); }

}  // namespace

void HarnessModel::finish(GraphBuilder& b) {
  graph_ = b.build_bipartite();
  for (const auto& [r, v] : b.registry().at(0).roles) {
    roles_[r] = v;
    gadget_roles_.push_back(r);
  }
}

std::vector<WellBehavedStep> HarnessModel::moves(const PerfectMatching& m) const {
  std::vector<WellBehavedStep> out;
  for_each_alternating_cycle(graph_, m, [&](const EdgeSet& c) {
    Direction d = direction(c);
    if (d != Direction::kNone) out.push_back({c, d});
    return true;
  });
  return out;
}

std::vector<VertexId> HarnessModel::gadget_path(const WellBehavedStep& s) const {
  const Closure* cl = nullptr;
  for (const auto& c : closures_)
    if (c.dir == s.direction) cl = &c;
  if (!cl) throw Error("step has no closure");
  EdgeSet closure_edges;
  for (size_t i = 0; i + 1 < cl->path.size(); ++i)
    closure_edges.push_back(graph_.edge_between(cl->path[i], cl->path[i + 1]));
  closure_edges = make_edge_set(closure_edges);
  std::unordered_map<VertexId, std::vector<EdgeId>> inc;
  for (EdgeId e : s.cycle) {
    if (in_set(closure_edges, e)) continue;
    inc[graph_.edge(e).u].push_back(e);
    inc[graph_.edge(e).v].push_back(e);
  }
  const VertexId start = role(cl->from), goal = role(cl->to);
  std::vector<VertexId> path{start};
  EdgeId prev = -1;
  VertexId v = start;
  while (v != goal) {
    const auto& es = inc.at(v);
    EdgeId e = es[0] != prev ? es[0] : es.at(1);
    prev = e;
    v = graph_.edge(e).other(v);
    path.push_back(v);
  }
  return path;
}

PerfectMatching HarnessModel::local_state(const Graph& host, const GadgetHandle& h,
                                          const PerfectMatching& m) const {
  std::vector<EdgeId> es;
  std::vector<char> covered(graph_.num_vertices(), 0);
  std::set<EdgeId> closure_edges;
  for (const auto& c : closures_)
    for (size_t i = 0; i + 1 < c.path.size(); ++i)
      closure_edges.insert(graph_.edge_between(c.path[i], c.path[i + 1]));
  std::unordered_map<VertexId, std::string> name;
  for (const auto& r : gadget_roles_) name[roles_.at(r)] = r;
  for (EdgeId e = 0; e < graph_.num_edges(); ++e) {
    if (closure_edges.count(e)) continue;
    const Edge& ed = graph_.edge(e);
    auto he = host.find_edge(h.role(name.at(ed.u)), h.role(name.at(ed.v)));
    if (!he) throw WrongGraph("host lacks a gadget edge");
    if (in_set(m.edges, *he)) {
      es.push_back(e);
      covered[ed.u] = covered[ed.v] = 1;
    }
  }
  for (const auto& c : closures_) {
    bool a = covered[role(c.from)], b = covered[role(c.to)];
    if (a != b) throw StateNotSemiDefault("gadget boundary is half matched");
    for (size_t i = a ? 1 : 0; i + 1 < c.path.size(); i += 2)
      es.push_back(graph_.edge_between(c.path[i], c.path[i + 1]));
  }
  return make_matching(graph_, es);
}

std::vector<VertexId> HarnessModel::to_host(const GadgetHandle& h,
                                            const std::vector<VertexId>& path) const {
  std::unordered_map<VertexId, std::string> name;
  for (const auto& r : gadget_roles_) name[roles_.at(r)] = r;
  std::vector<VertexId> out;
  out.reserve(path.size());
  for (VertexId v : path) out.push_back(h.role(name.at(v)));
  return out;
}

TowerModel::TowerModel(int h) : h_(h) {
  if (h < 1) throw ScaleInvalid("tower height must be at least 1");
  GraphBuilder b;
  VertexId v = b.add_vertex("v", Side::kLeft);
  VertexId w = b.add_vertex("w", Side::kRight);
  add_tower(b, v, -1, w, h);
  b.add_edge(w, v);
  finish(b);
  closure_ = graph_.edge_between(v, w);
  closures_.push_back({"v", "w", Direction::kThrough, {v, w}});
}

Direction TowerModel::direction(const EdgeSet& cycle) const {
  return in_set(cycle, closure_) ? Direction::kThrough : Direction::kNone;
}

PerfectMatching TowerModel::default_state() const {
  std::vector<std::pair<VertexId, VertexId>> p{{role("v"), role("a_0")}, {role("b_0"), role("w")}};
  for (int i = 1; i <= h_; ++i) p.emplace_back(role(rname("a", i)), role(rname("b", i)));
  return matching_from_pairs(graph_, p);
}

PerfectMatching TowerModel::locked_state() const {
  if (h_ < 2) throw ScaleInvalid("a locked tower needs height at least 2");
  std::vector<std::pair<VertexId, VertexId>> p{{role("v"), role("a_0")}, {role("b_0"), role("w")}};
  for (int i = 1; i <= h_ - 2; ++i) p.emplace_back(role(rname("a", i)), role(rname("b", i)));
  p.emplace_back(role(rname("a", h_)), role(rname("a", h_ - 1)));
  p.emplace_back(role(rname("b", h_)), role(rname("b", h_ - 1)));
  return matching_from_pairs(graph_, p);
}

bool TowerModel::semi_default(const PerfectMatching& m) const {
  return in_set(m.edges, graph_.edge_between(role("v"), role("a_0")));
}

std::vector<PerfectMatching> TowerModel::semi_default_states() const {
  std::vector<PerfectMatching> out;
  for (auto& m : enumerate_perfect_matchings(graph_))
    if (semi_default(m)) out.push_back(std::move(m));
  return out;
}

std::vector<int> TowerModel::horizontals(const PerfectMatching& m) const {
  std::vector<int> out;
  for (int i = 1; i <= h_; ++i)
    if (in_set(m.edges, graph_.edge_between(role(rname("a", i)), role(rname("b", i)))))
      out.push_back(i);
  return out;
}

LadderModel::LadderModel() {
  GraphBuilder b;
  VertexId a0 = b.add_vertex("a0", Side::kLeft);
  VertexId b0 = b.add_vertex("b0", Side::kRight);
  VertexId a6 = b.add_vertex("a6", Side::kLeft);
  VertexId b6 = b.add_vertex("b6", Side::kRight);
  add_ladder(b, a0, b0, a6, b6);
  VertexId pt = b.add_vertex("top_p", Side::kRight);
  VertexId qt = b.add_vertex("top_q", Side::kLeft);
  VertexId pb = b.add_vertex("bottom_p", Side::kRight);
  VertexId qb = b.add_vertex("bottom_q", Side::kLeft);
  b.add_edge(a6, pt);
  b.add_edge(pt, qt);
  b.add_edge(qt, b6);
  b.add_edge(a0, pb);
  b.add_edge(pb, qb);
  b.add_edge(qb, b0);
  finish(b);
  roles_["top_p"] = pt;
  roles_["top_q"] = qt;
  roles_["bottom_p"] = pb;
  roles_["bottom_q"] = qb;
  closures_.push_back({"a_6", "b_6", Direction::kTop, {a6, pt, qt, b6}});
  closures_.push_back({"a_0", "b_0", Direction::kBottom, {a0, pb, qb, b0}});
}

Direction LadderModel::direction(const EdgeSet& cycle) const {
  bool top = in_set(cycle, graph_.edge_between(role("a_6"), role("top_p")));
  bool bottom = in_set(cycle, graph_.edge_between(role("a_0"), role("bottom_p")));
  if (top && !bottom) return Direction::kTop;
  if (bottom && !top) return Direction::kBottom;
  return Direction::kNone;
}

PerfectMatching LadderModel::from_inner(
    const std::vector<std::pair<std::string, std::string>>& inner) const {
  std::vector<std::pair<VertexId, VertexId>> p{{role("a_6"), role("top_p")},
                                               {role("top_q"), role("b_6")},
                                               {role("a_0"), role("bottom_p")},
                                               {role("bottom_q"), role("b_0")}};
  for (const auto& [x, y] : inner) p.emplace_back(role(x), role(y));
  return matching_from_pairs(graph_, p);
}

PerfectMatching LadderModel::state(StateLabel label) const {
  switch (label) {
    case StateLabel::kDefault:
      return from_inner({{"a_1", "b_1"}, {"a_2", "b_2"}, {"a_3", "b_3"}, {"a_4", "b_4"}, {"a_5", "b_5"}});
    case StateLabel::kBottomOpen:
      return from_inner({{"a_5", "b_5"}, {"a_4", "a_3"}, {"b_4", "b_3"}, {"a_2", "a_1"}, {"b_2", "b_1"}});
    case StateLabel::kTopOpen:
      return from_inner({{"a_5", "a_4"}, {"b_5", "b_4"}, {"a_3", "a_2"}, {"b_3", "b_2"}, {"a_1", "b_1"}});
    default:
      throw Error("no canonical ladder state for that label");
  }
}

bool LadderModel::semi_default(const PerfectMatching& m) const {
  return in_set(m.edges, graph_.edge_between(role("a_6"), role("top_p"))) &&
         in_set(m.edges, graph_.edge_between(role("a_0"), role("bottom_p")));
}

std::vector<PerfectMatching> LadderModel::semi_default_states() const {
  std::vector<PerfectMatching> out;
  for (auto& m : enumerate_perfect_matchings(graph_))
    if (semi_default(m)) out.push_back(std::move(m));
  return out;
}

std::vector<int> LadderModel::horizontals(const PerfectMatching& m) const {
  std::vector<int> out;
  for (int i = 1; i <= 5; ++i)
    if (in_set(m.edges, graph_.edge_between(role(rname("a", i)), role(rname("b", i)))))
      out.push_back(i);
  return out;
}

StateLabel LadderModel::label(const PerfectMatching& m) const {
  if (!semi_default(m)) return StateLabel::kOther;
  auto hz = horizontals(m);
  if (hz.size() == 5) return StateLabel::kDefault;
  if (hz == std::vector<int>{5}) return StateLabel::kBottomOpen;
  if (hz == std::vector<int>{1}) return StateLabel::kTopOpen;
  return StateLabel::kSemiDefault;
}

namespace {

struct StateSpace {
  std::map<EdgeSet, int> index;
  std::vector<EdgeSet> states;
  std::vector<std::vector<std::pair<int, WellBehavedStep>>> adj;

  int id(const EdgeSet& s) {
    auto [it, fresh] = index.emplace(s, static_cast<int>(states.size()));
    if (fresh) {
      states.push_back(s);
      adj.emplace_back();
    }
    return it->second;
  }
};

// Explores every state reachable by well-behaved flips.
void explore(const HarnessModel& model, StateSpace& sp, const PerfectMatching& from) {
  std::deque<int> q{sp.id(from.edges)};
  std::vector<char> done;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (static_cast<int>(done.size()) <= u) done.resize(u + 1, 0);
    if (done[u]) continue;
    done[u] = 1;
    PerfectMatching cur{sp.states[u], from.graph_hash};
    for (auto& mv : model.moves(cur)) {
      int w = sp.id(symmetric_difference(cur.edges, mv.cycle));
      sp.adj[u].emplace_back(w, std::move(mv));
      if (static_cast<int>(done.size()) <= w || !done[w]) q.push_back(w);
    }
  }
}

std::vector<int> bfs(const StateSpace& sp, int s) {
  std::vector<int> d(sp.states.size(), -1);
  std::deque<int> q{s};
  d[s] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (const auto& [w, mv] : sp.adj[u])
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        q.push_back(w);
      }
  }
  return d;
}

}  // namespace

MinWellBehaved min_well_behaved_sequence(const HarnessModel& model, const PerfectMatching& from,
                                         const PerfectMatching& to, bool all_directions) {
  StateSpace sp;
  explore(model, sp, from);
  MinWellBehaved r;
  auto it = sp.index.find(to.edges);
  if (it == sp.index.end()) return r;
  const int s = sp.index.at(from.edges), t = it->second;
  std::vector<int> df = bfs(sp, s), dt = bfs(sp, t);
  r.length = df[t];
  // Greedy witness along decreasing distance to the target.
  for (int u = s; u != t;) {
    for (const auto& [w, mv] : sp.adj[u]) {
      if (dt[w] == dt[u] - 1) {
        r.witness.push_back(mv);
        u = w;
        break;
      }
    }
  }
  if (all_directions) {
    std::string cur;
    std::function<void(int)> rec = [&](int u) {
      if (u == t) {
        r.direction_strings.insert(cur);
        return;
      }
      for (const auto& [w, mv] : sp.adj[u]) {
        if (dt[w] != dt[u] - 1 || df[w] != df[u] + 1) continue;
        cur.push_back(direction_char(mv.direction));
        rec(w);
        cur.pop_back();
      }
    };
    rec(s);
  }
  return r;
}

LadderTransferGraph ladder_transfer_graph(const LadderModel& model) {
  LadderTransferGraph tg;
  tg.states = model.semi_default_states();
  const int k = static_cast<int>(tg.states.size());
  std::map<EdgeSet, int> index;
  for (int i = 0; i < k; ++i) index[tg.states[i].edges] = i;
  tg.labels.assign(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i) {
    for (const auto& c1 : model.moves(tg.states[i])) {
      PerfectMatching mid = flip(tg.states[i], c1.cycle);
      for (const auto& c2 : model.moves(mid)) {
        if (c2.direction != c1.direction) continue;
        auto it = index.find(symmetric_difference(mid.edges, c2.cycle));
        if (it == index.end()) continue;
        int j = it->second;
        int bit = c1.direction == Direction::kTop ? 1 : 2;
        tg.labels[i][j] |= bit;
        auto& wit = c1.direction == Direction::kTop ? tg.top_witness : tg.bottom_witness;
        wit.emplace(std::pair{i, j}, std::vector<WellBehavedStep>{c1, c2});
      }
    }
  }
  for (int i = 0; i < k; ++i) {
    std::vector<int> d(k, -1);
    std::deque<int> q{i};
    d[i] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int w = 0; w < k; ++w)
        if (w != u && tg.labels[u][w] && d[w] < 0) {
          d[w] = d[u] + 1;
          q.push_back(w);
        }
    }
    for (int x : d) tg.diameter = std::max(tg.diameter, x < 0 ? 1 << 20 : x);
  }
  return tg;
}

LadderPlan ladder_transfer_plan(const LadderModel& model, const LadderTransferGraph& tg,
                                const PerfectMatching& from, const PerfectMatching& to) {
  auto find = [&](const PerfectMatching& m) {
    for (size_t i = 0; i < tg.states.size(); ++i)
      if (tg.states[i].edges == m.edges) return static_cast<int>(i);
    throw StateNotSemiDefault("ladder state is not semi-default");
  };
  const int s = find(from), t = find(to);
  // Hops as (state, state, 't' | 'b'); the lexicographically least direction
  // string among the shortest hop sequences, with 't' before 'b'.
  using Hop = std::tuple<int, int, char>;
  std::vector<Hop> best;
  std::string best_dirs;
  auto consider = [&](std::vector<Hop> hops) {
    std::string d;
    for (auto& h : hops) d += std::string(2, std::get<2>(h));
    if (best.empty() || d < best_dirs) {
      best = std::move(hops);
      best_dirs = d;
    }
  };
  auto labels = [&](int i, int j) {
    std::string out;
    if (tg.labels[i][j] & 1) out += 't';
    if (tg.labels[i][j] & 2) out += 'b';
    return out;
  };
  bool found = s == t;
  if (!found) {
    for (char c : labels(s, t)) {
      consider({{s, t, c}});
      found = true;
    }
  }
  if (!found) {
    for (size_t m = 0; m < tg.states.size(); ++m)
      for (char c1 : labels(s, static_cast<int>(m)))
        for (char c2 : labels(static_cast<int>(m), t)) {
          consider({{s, static_cast<int>(m), c1}, {static_cast<int>(m), t, c2}});
          found = true;
        }
  }
  if (!found) throw Error("ladder states are more than two transfers apart");
  LadderPlan plan;
  for (auto [i, j, c] : best) {
    const auto& wit = c == 't' ? tg.top_witness : tg.bottom_witness;
    for (const auto& st : wit.at({i, j})) plan.steps.push_back(st);
    plan.directions += std::string(2, c);
  }
  while (plan.steps.size() < 4) {
    WellBehavedStep idle;
    for (auto& mv : model.moves(to))
      if (mv.direction == Direction::kTop) {
        idle = mv;
        break;
      }
    if (idle.direction == Direction::kNone) throw Error("no idle ladder flip");
    plan.steps.push_back(idle);
    plan.steps.push_back(idle);
    plan.directions += "tt";
  }
  return plan;
}

std::vector<WellBehavedStep> TowerPlanner::plan(const PerfectMatching& from,
                                                const PerfectMatching& to) {
  auto key = std::pair{from.edges, to.edges};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  if (!model_.semi_default(from) || !model_.semi_default(to))
    throw StateNotSemiDefault("tower state is not semi-default");
  MinWellBehaved mw = min_well_behaved_sequence(model_, from, to);
  if (mw.length < 0) throw Error("tower states are not connected by well-behaved flips");
  const int target = 2 * model_.height();
  if (mw.length > target || (target - mw.length) % 2 != 0)
    throw Error("shortest tower sequence does not fit into 2h flips");
  std::vector<WellBehavedStep> steps = mw.witness;
  auto idle = model_.moves(to);
  if (idle.empty()) throw Error("no idle tower flip");
  while (static_cast<int>(steps.size()) < target) {
    steps.push_back(idle.front());
    steps.push_back(idle.front());
  }
  memo_.emplace(key, steps);
  return steps;
}

}  // namespace bpm
