#include "bpm/lemmas.h"

#include <algorithm>
#include <deque>
#include <map>

#include "bpm/oracles.h"

namespace bpm {

namespace {

std::string rname(const char* base, int i) { return std::string(base) + "_" + std::to_string(i); }

bool sequence_reaches(const Graph& g, const PerfectMatching& from, const PerfectMatching& to,
                      const std::vector<WellBehavedStep>& steps) {
  std::vector<EdgeSet> cycles;
  for (const auto& s : steps) cycles.push_back(s.cycle);
  ValidationReport rep = validate_flip_sequence(g, from, cycles);
  return rep.ok && rep.final_matching == to;
}

std::vector<int> sym_diff(std::vector<int> a, std::vector<int> b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Every edge of a tower other than v a_0, a_0 b_0 and b_0 w.
std::vector<char> canonical_tower_filter(const Graph& g, const GadgetRegistry& reg) {
  std::vector<char> ok(g.num_edges(), 1);
  for (int tw : reg.of_kind(GadgetKind::kTower)) {
    const auto& h = reg.at(tw);
    for (int i = 1; i <= h.param("h"); ++i) {
      VertexId a = h.role(rname("a", i)), b = h.role(rname("b", i));
      ok[g.edge_between(a, b)] = 0;
      ok[g.edge_between(a, h.role(rname("a", i - 1)))] = 0;
      ok[g.edge_between(b, h.role(rname("b", i - 1)))] = 0;
    }
  }
  return ok;
}

bool two_colourable(const Graph& g) {
  return std::holds_alternative<TwoColoring>(is_bipartite_certificate(g));
}

}  // namespace

TowerLemmaReport verify_tower(int h) {
  TowerLemmaReport r;
  r.h = h;
  TowerPlanner planner(h);
  const TowerModel& m = planner.model();
  const PerfectMatching locked = m.locked_state(), def = m.default_state();
  r.min_locked_to_default = min_well_behaved_sequence(m, locked, def).length;

  // Every flip in the well-behaved state space reachable from the locked
  // state moves at most one horizontal index.
  std::set<EdgeSet> seen{locked.edges};
  std::deque<PerfectMatching> q{locked};
  while (!q.empty()) {
    PerfectMatching cur = q.front();
    q.pop_front();
    for (const auto& mv : m.moves(cur)) {
      ++r.flips_explored;
      PerfectMatching next = flip(cur, mv.cycle);
      const size_t d = sym_diff(m.horizontals(cur), m.horizontals(next)).size();
      if (d == 0) ++r.flips_h_unchanged;
      else if (d == 1) ++r.flips_h_one;
      else ++r.horizontal_violations;
      if (seen.insert(next.edges).second) q.push_back(next);
    }
  }
  r.states_explored = seen.size();

  auto semi = m.semi_default_states();
  r.semi_default_states = static_cast<int>(semi.size());
  for (const auto& a : semi)
    for (const auto& b : semi) {
      ++r.pairs_checked;
      auto steps = planner.plan(a, b);
      bool ok = static_cast<int>(steps.size()) == 2 * h;
      for (const auto& s : steps) ok = ok && s.direction == Direction::kThrough;
      if (ok && sequence_reaches(m.graph(), a, b, steps)) ++r.pairs_valid;
    }
  return r;
}

bool LadderLemmaReport::pass() const {
  return semi_default_states == 8 && transfer_diameter == 2 && labels_ok &&
         min_bottom_to_default == 4 && bottom_directions == std::set<std::string>{"bbbb"} &&
         min_top_to_default == 4 && top_directions == std::set<std::string>{"tttt"} &&
         plans_checked == 64 && plans_valid == plans_checked;
}

LadderLemmaReport verify_ladder() {
  LadderLemmaReport r;
  LadderModel lm;
  LadderTransferGraph tg = ladder_transfer_graph(lm);
  r.semi_default_states = static_cast<int>(tg.states.size());
  r.transfer_diameter = tg.diameter;
  for (int d = 0; d < 2; ++d) {
    const auto& wit = d == 0 ? tg.top_witness : tg.bottom_witness;
    const Direction want = d == 0 ? Direction::kTop : Direction::kBottom;
    for (const auto& [ij, steps] : wit) {
      bool ok = steps.size() == 2 && steps[0].direction == want && steps[1].direction == want &&
                sequence_reaches(lm.graph(), tg.states[ij.first], tg.states[ij.second], steps);
      if (!ok) r.labels_ok = false;
    }
  }
  const PerfectMatching def = lm.state(StateLabel::kDefault);
  auto mb = min_well_behaved_sequence(lm, lm.state(StateLabel::kBottomOpen), def, true);
  r.min_bottom_to_default = mb.length;
  r.bottom_directions = mb.direction_strings;
  auto mt = min_well_behaved_sequence(lm, lm.state(StateLabel::kTopOpen), def, true);
  r.min_top_to_default = mt.length;
  r.top_directions = mt.direction_strings;

  for (const auto& a : tg.states)
    for (const auto& b : tg.states) {
      ++r.plans_checked;
      LadderPlan p = ladder_transfer_plan(lm, tg, a, b);
      bool ok = p.steps.size() == 4 && p.directions.size() == 4 && p.directions[0] == p.directions[1] &&
                p.directions[2] == p.directions[3];
      for (size_t i = 0; ok && i < 4; ++i) ok = direction_char(p.steps[i].direction) == p.directions[i];
      if (ok && sequence_reaches(lm.graph(), a, b, p.steps)) ++r.plans_valid;
    }
  return r;
}

XorLemmaReport verify_xor(CityScale scale, bool mirrored) {
  XorLemmaReport r;
  r.scale = scale;
  GraphBuilder b;
  std::vector<VertexId> l, rr;
  for (int i = 0; i < 3; ++i) {
    l.push_back(b.add_vertex("l" + std::to_string(i), Side::kLeft));
    rr.push_back(b.add_vertex("r" + std::to_string(i), Side::kRight));
  }
  LogicalEdge e1 = make_logical_edge(b, l[0], rr[0]);
  LogicalEdge e2 = mirrored ? make_logical_edge(b, rr[1], l[1]) : make_logical_edge(b, l[1], rr[1]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(i == j && i < 2)) b.add_edge(l[i], rr[j]);
  const int x = add_xor(b, e1, e2, Connector{ConnectorKind::kCity, scale});
  BipartiteGraph g = b.build_bipartite();
  const GadgetRegistry& reg = b.registry();
  r.bipartite = two_colourable(g);
  r.cycles = for_each_simple_cycle(g, [](EdgeId) { return true; }, [&](const std::vector<VertexId>& c) {
    EdgeSet es = edges_of_closed_walk(g, c);
    if (!is_regular(g, reg, es)) return true;
    ++r.regular;
    CycleClass cc = classify_cycle(g, reg, x, es);
    if (cc.uses_first == cc.uses_second) {
      ++r.violations;
      if (!r.counterexample) r.counterexample = c;
    }
    return true;
  });
  return r;
}

ForallLemmaReport verify_forall(int t, CityScale scale) {
  ForallLemmaReport r;
  r.t = t;
  r.scale = scale;
  // v_out closes through a city back from z; u_in and w_in both reach z via s.
  GraphBuilder b;
  VertexId v_out = b.add_vertex("v_out", Side::kRight);
  VertexId u_in = b.add_vertex("u_in", Side::kLeft);
  VertexId w_in = b.add_vertex("w_in", Side::kLeft);
  VertexId s = b.add_vertex("s", Side::kRight);
  VertexId z = b.add_vertex("z", Side::kLeft);
  b.add_edge(s, u_in);
  b.add_edge(s, w_in);
  b.add_edge(z, s);
  add_city(b, z, v_out, scale);
  const int fa = add_forall(b, v_out, u_in, w_in, t, scale);
  BipartiteGraph g = b.build_bipartite();
  const GadgetRegistry& reg = b.registry();
  r.bipartite = two_colourable(g);

  std::vector<char> allowed = canonical_tower_filter(g, reg);
  std::vector<EdgeId> required;
  for (int c : reg.of_kind(GadgetKind::kCity)) {
    const auto& t1 = reg.at(reg.at(c).children.front());
    required.push_back(g.edge_between(t1.role("v"), t1.role("a_0")));
  }
  auto ladders = children_of_kind(reg, fa, GadgetKind::kLadder);
  auto fail = [&](const std::vector<VertexId>& c, const std::string& why) {
    ++r.violations;
    if (!r.counterexample) {
      r.counterexample = c;
      r.counterexample_reason = why;
    }
  };
  for_each_cycle_through(
      g, [&](EdgeId e) { return static_cast<bool>(allowed[e]); }, required,
      [&](const std::vector<VertexId>& c) {
        EdgeSet es = edges_of_closed_walk(g, c);
        if (!is_regular(g, reg, es)) {
          fail(c, "enumerated cycle is not regular");
          return true;
        }
        ++r.regular;
        CycleClass cc = classify_cycle(g, reg, fa, es);
        r.max_ladders_seen = std::max(r.max_ladders_seen, static_cast<int>(cc.visited_ladders.size()));
        Direction want;
        if (cc.verdict == CycleVerdict::kTopState) {
          ++r.top;
          want = Direction::kTop;
        } else if (cc.verdict == CycleVerdict::kBottomState) {
          ++r.bottom;
          want = Direction::kBottom;
        } else {
          fail(c, "neither top nor bottom state");
          return true;
        }
        if (cc.visited_ladders.size() != 1) {
          fail(c, "visits " + std::to_string(cc.visited_ladders.size()) + " ladders");
          return true;
        }
        CycleClass lc = classify_cycle(g, reg, ladders[cc.visited_ladders[0]], es);
        if (lc.verdict != CycleVerdict::kWellBehaved) fail(c, "ladder visit is ill-behaved");
        else if (lc.direction != want) fail(c, "ladder direction disagrees with the state");
        return true;
      });

  // Damage bound.
  std::set<VertexId> ports;
  r.boundary_ok = true;
  r.min_port_edges = 0;
  for (int id : ladders) {
    const auto& h = reg.at(id);
    std::set<VertexId> mine;
    for (const auto& [name, v] : h.roles) mine.insert(v);
    std::set<VertexId> own_ports{h.role("a_0"), h.role("b_0"), h.role("a_6"), h.role("b_6")};
    ports.insert(own_ports.begin(), own_ports.end());
    for (VertexId v : mine) {
      if (own_ports.count(v)) continue;
      for (EdgeId e : g.incident(v))
        if (!mine.count(g.edge(e).other(v))) r.boundary_ok = false;
    }
    std::vector<EdgeId> es;
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (mine.count(g.edge(e).u) && mine.count(g.edge(e).v)) es.push_back(e);
    // Smallest number of port edges in a nonempty system of paths through
    // the interior: all interior degrees 0 or 2, at least one port edge.
    int best = 0;
    const int m = static_cast<int>(es.size());
    std::map<VertexId, int> deg;
    for (uint32_t mask = 1; mask < (1u << m); ++mask) {
      deg.clear();
      int port_edges = 0;
      for (int i = 0; i < m; ++i) {
        if (!(mask >> i & 1)) continue;
        const Edge& ed = g.edge(es[i]);
        ++deg[ed.u];
        ++deg[ed.v];
        if (own_ports.count(ed.u) || own_ports.count(ed.v)) ++port_edges;
      }
      if (port_edges == 0) continue;
      bool ok = true;
      for (auto [v, d] : deg)
        if (!own_ports.count(v) && d != 2) ok = false;
      if (ok && (best == 0 || port_edges < best)) best = port_edges;
    }
    if (best == 0) r.boundary_ok = false;
    if (r.min_port_edges == 0 || best < r.min_port_edges) r.min_port_edges = best;
  }
  r.shared_ports = static_cast<int>(ports.size());
  r.port_capacity = 2 * r.shared_ports;
  r.damage_bound = r.min_port_edges > 0 ? std::min(t, std::max(1, r.port_capacity / r.min_port_edges)) : t;
  return r;
}

}  // namespace bpm
