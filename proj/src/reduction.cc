#include "bpm/reduction.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "bpm/gadget_models.h"

namespace bpm {

namespace {

std::string rname(const char* base, int i) { return std::string(base) + "_" + std::to_string(i); }

int64_t checked(__int128 v) {
  if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min())
    throw InfeasibleScale("count does not fit into 64 bits");
  return static_cast<int64_t>(v);
}

// Matching edges of every tower, default or locked, plus `extra`.
PerfectMatching tower_matching(const Graph& g, const GadgetRegistry& reg, bool locked,
                               const std::vector<std::pair<VertexId, VertexId>>& extra) {
  std::set<EdgeId> es;
  auto add = [&](VertexId u, VertexId v) { es.insert(g.edge_between(u, v)); };
  for (int id : reg.of_kind(GadgetKind::kTower)) {
    const auto& h = reg.at(id);
    const int ht = h.param("h");
    auto R = [&](const char* b, int i) { return h.role(rname(b, i)); };
    add(h.role("v"), R("a", 0));
    add(R("b", 0), h.role("w"));
    if (!locked) {
      for (int i = 1; i <= ht; ++i) add(R("a", i), R("b", i));
    } else {
      if (ht < 2) throw ScaleInvalid("a locked tower needs height at least 2");
      for (int i = 1; i <= ht - 2; ++i) add(R("a", i), R("b", i));
      add(R("a", ht), R("a", ht - 1));
      add(R("b", ht), R("b", ht - 1));
    }
  }
  for (auto [u, v] : extra) add(u, v);
  return make_matching(g, std::vector<EdgeId>(es.begin(), es.end()));
}

using Rungs = std::vector<std::pair<int, int>>;  // (a index, b index) or same-side pairs
void ladder_pairs(const GadgetHandle& h, StateLabel label,
                  std::vector<std::pair<VertexId, VertexId>>& out) {
  auto A = [&](int i) { return h.role(rname("a", i)); };
  auto B = [&](int i) { return h.role(rname("b", i)); };
  switch (label) {
    case StateLabel::kDefault:
      for (int i = 1; i <= 5; ++i) out.emplace_back(A(i), B(i));
      break;
    case StateLabel::kTopOpen:
      out.insert(out.end(), {{A(5), A(4)}, {B(5), B(4)}, {A(3), A(2)}, {B(3), B(2)}, {A(1), B(1)}});
      break;
    case StateLabel::kBottomOpen:
      out.insert(out.end(), {{A(5), B(5)}, {A(4), A(3)}, {B(4), B(3)}, {A(2), A(1)}, {B(2), B(1)}});
      break;
    default:
      throw Error("no canonical ladder state for that label");
  }
}

std::vector<std::vector<std::vector<VertexId>>> plan_towers(const Graph& g, const GadgetRegistry& reg,
                                                            int hc, const PerfectMatching& m1,
                                                            const PerfectMatching& m2) {
  TowerPlanner planner(hc);
  const TowerModel& tm = planner.model();
  std::vector<std::vector<std::vector<VertexId>>> paths(reg.size());
  for (int id : reg.of_kind(GadgetKind::kTower)) {
    const auto& h = reg.at(id);
    if (h.param("h") != hc) throw ProfileMismatch("towers of different heights");
    auto plan = planner.plan(tm.local_state(g, h, m1), tm.local_state(g, h, m2));
    for (const auto& step : plan) paths[id].push_back(tm.to_host(h, tm.gadget_path(step)));
  }
  return paths;
}

// Flips the cycles one by one, checking alternation and (optionally) that
// the matching is semi-default after every pair.
void check_sequence(const Graph& g, const GadgetRegistry& reg, const PerfectMatching& m1,
                    const PerfectMatching& m2, const std::vector<EdgeSet>& cycles) {
  ValidationReport rep = validate_flip_sequence(g, m1, cycles);
  if (!rep.ok)
    throw Error("synthesised cycle " + std::to_string(rep.failed_index) + " is invalid: " +
                violation_name(rep.violation) + " " + rep.detail);
  PerfectMatching cur = m1;
  for (size_t c = 0; c < cycles.size(); ++c) {
    cur = flip(cur, cycles[c]);
    if (c % 2 == 1 && !is_semi_default(g, reg, cur))
      throw Error("matching is not semi-default after cycle pair " + std::to_string(c / 2));
  }
  if (!(rep.final_matching == m2)) throw Error("synthesised sequence ends elsewhere");
}

}  // namespace

HamProviderFailed::HamProviderFailed(Pattern p)
    : Error("no Hamiltonian cycle respects pattern " + p.str()), pattern(std::move(p)) {}

// ---- profiles ----------------------------------------------------------------

ScaleProfile ScaleProfile::desk(int64_t t, int64_t width) {
  ScaleProfile p;
  p.kind = Kind::kDesk;
  p.city_height = 2 * t;
  p.city_width = width;
  p.ladders = t;
  return p;
}

ScaleProfile ScaleProfile::paper(int64_t n) {
  if (n < 1) throw ProfileInvalid("paper profile needs n >= 1");
  __int128 n4 = static_cast<__int128>(n) * n * n * n;
  ScaleProfile p;
  p.kind = Kind::kPaper;
  p.city_height = checked(2 * n4);
  p.city_width = checked(4 * n4 + 100 * static_cast<__int128>(n));
  p.ladders = checked(n4);
  return p;
}

ScaleProfile ScaleProfile::parse(const std::string& text) {
  if (text.rfind("paper:", 0) == 0) {
    try {
      return paper(std::stoll(text.substr(6)));
    } catch (const std::logic_error&) {
      throw ProfileInvalid("bad paper profile '" + text + "'");
    }
  }
  std::vector<int64_t> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw ProfileInvalid("bad profile component '" + tok + "'");
    }
  }
  if (v.size() != 3) throw ProfileInvalid("profile must be h,t,width");
  ScaleProfile p;
  p.city_height = v[0];
  p.ladders = v[1];
  p.city_width = v[2];
  return p;
}

void ScaleProfile::validate(bool for_synthesis) const {
  if (city_height < 1 || city_width < 1 || ladders < 1)
    throw ProfileInvalid("profile components must be positive");
  if (for_synthesis && city_height != 2 * ladders)
    throw ProfileMismatch("synthesis needs h_c = 2t (h_c = " + std::to_string(city_height) +
                          ", t = " + std::to_string(ladders) + ")");
}

CityScale ScaleProfile::city() const {
  if (city_width > std::numeric_limits<int>::max() / 4 ||
      city_height > std::numeric_limits<int>::max() / 4)
    throw InfeasibleScale("city scale too large to build");
  return CityScale{static_cast<int>(city_width), static_cast<int>(city_height)};
}

std::string ScaleProfile::describe() const {
  std::ostringstream os;
  os << (kind == Kind::kPaper ? "paper" : "desk") << " profile (h_c=" << city_height
     << ", t=" << ladders << ", t_c=" << city_width << "; "
     << (kind == Kind::kPaper ? "census only" : "scaled down, no hardness guarantee") << ")";
  return os.str();
}

// ---- G_H -----------------------------------------------------------------------

GhCensus gh_census_formula(const HamInstance& inst, const ScaleProfile& p) {
  const __int128 n = inst.n(), k = inst.k(), arcs = inst.graph.num_arcs();
  const __int128 h = p.city_height, tc = p.city_width, t = p.ladders;
  GhCensus c;
  c.cities = checked(n + 16 * k);
  c.towers = checked(static_cast<__int128>(c.cities) * tc);
  c.xors = checked(3 * k);
  c.foralls = checked(k);
  c.ladders = checked(k * t);
  c.vertices = checked(2 * n + static_cast<__int128>(c.cities) * tc * (2 * h + 2) + k * (34 + 10 * t));
  c.edges = checked(static_cast<__int128>(c.cities) * (tc * (3 * h + 2) + 1) + (arcs - 2 * k) +
                    k * (35 + 17 * t));
  c.v_s = checked(n + 22 * k);
  return c;
}

GhCensus census(const GhGraph& gh) {
  GhCensus c;
  c.vertices = gh.graph.num_vertices();
  c.edges = gh.graph.num_edges();
  c.cities = gh.registry.of_kind(GadgetKind::kCity).size();
  c.towers = gh.registry.of_kind(GadgetKind::kTower).size();
  c.xors = gh.registry.of_kind(GadgetKind::kXor).size();
  c.foralls = gh.registry.of_kind(GadgetKind::kForall).size();
  c.ladders = gh.registry.of_kind(GadgetKind::kLadder).size();
  c.v_s = gh.semi_default_vertices.size();
  return c;
}

GhGraph build_GH(const HamInstance& inst, const ScaleProfile& profile) {
  inst.validate();
  profile.validate(false);
  GhCensus expect = gh_census_formula(inst, profile);
  if (expect.vertices > kMaxBuildVertices)
    throw InfeasibleScale("G_H would have " + std::to_string(expect.vertices) +
                          " vertices; only the census is available at this scale");
  const CityScale s = profile.city();
  GhGraph gh;
  gh.instance = inst;
  gh.profile = profile;
  GraphBuilder b;
  const int n = inst.n();
  for (int v = 0; v < n; ++v) {
    gh.v_in.push_back(b.add_vertex("h" + std::to_string(v) + "_in", Side::kLeft));
    gh.v_out.push_back(b.add_vertex("h" + std::to_string(v) + "_out", Side::kRight));
  }
  for (int v = 0; v < n; ++v) gh.vertex_city.push_back(add_city(b, gh.v_in[v], gh.v_out[v], s));
  std::set<int> paired;
  for (auto [e, f] : inst.pairs) paired.insert({e, f});
  for (int a = 0; a < inst.graph.num_arcs(); ++a) {
    if (paired.count(a)) continue;
    auto [u, w] = inst.graph.arc(a);
    b.add_edge(gh.v_out[u], gh.v_in[w]);
  }
  for (int i = 0; i < inst.k(); ++i)
    gh.forall.push_back(add_forall(b, gh.v_out[inst.designated(i)], gh.v_in[inst.u(i)],
                                   gh.v_in[inst.w(i)], static_cast<int>(profile.ladders), s));
  gh.graph = b.build_bipartite();
  gh.registry = b.registry();
  gh.semi_default_vertices = gh.v_in;
  for (int f : gh.forall) {
    const auto& h = gh.registry.at(f);
    for (int x : children_of_kind(gh.registry, f, GadgetKind::kXor))
      for (int i = 1; i <= 4; ++i) gh.semi_default_vertices.push_back(gh.registry.at(x).role(rname("x", i)));
    for (int i = 1; i <= 10; ++i) gh.semi_default_vertices.push_back(h.role(rname("x", i)));
  }
  return gh;
}

PerfectMatching default_matching(const GhGraph& gh) {
  std::vector<std::pair<VertexId, VertexId>> extra;
  for (int f : gh.forall) {
    const auto& h = gh.registry.at(f);
    extra.emplace_back(h.role("x_9"), h.role("x_10"));
    for (int l : children_of_kind(gh.registry, f, GadgetKind::kLadder))
      ladder_pairs(gh.registry.at(l), StateLabel::kDefault, extra);
  }
  return tower_matching(gh.graph, gh.registry, false, extra);
}

PerfectMatching pattern_matching(const GhGraph& gh, const Pattern& p) {
  check_pattern(gh.instance, p);
  std::vector<std::pair<VertexId, VertexId>> extra;
  for (size_t i = 0; i < gh.forall.size(); ++i) {
    const auto& h = gh.registry.at(gh.forall[i]);
    extra.emplace_back(h.role("x_9"), h.role("x_10"));
    for (int l : children_of_kind(gh.registry, gh.forall[i], GadgetKind::kLadder))
      ladder_pairs(gh.registry.at(l), p.picks_e[i] ? StateLabel::kTopOpen : StateLabel::kBottomOpen,
                   extra);
  }
  return tower_matching(gh.graph, gh.registry, true, extra);
}

Projection project_onto(const Graph& g, const PerfectMatching& m, const PerfectMatching& m_def,
                        const std::vector<VertexId>& anchor) {
  std::vector<char> in_anchor(g.num_vertices(), 0);
  for (VertexId v : anchor) in_anchor[v] = 1;
  Projection r;
  r.sequence.start = m;
  r.result = m;
  for (const auto& c : decompose_symmetric_difference(g, m, m_def)) {
    bool touches = std::any_of(c.vertices.begin(), c.vertices.end(),
                               [&](VertexId v) { return in_anchor[v]; });
    if (!touches) continue;
    r.sequence.cycles.push_back(c.edges);
    r.result = flip(r.result, c.edges);
  }
  return r;
}

Projection semi_default_projection(const GhGraph& gh, const PerfectMatching& m) {
  return project_onto(gh.graph, m, default_matching(gh), gh.semi_default_vertices);
}

HamProvider oracle_provider(const HamInstance& inst) {
  return [inst](const Pattern& p) { return ham_cycle_respecting(inst, p); };
}

Synthesis synthesize_flip_sequence(const GhGraph& gh, const PerfectMatching& m1,
                                   const PerfectMatching& m2, const HamProvider& provider) {
  gh.profile.validate(true);
  const Graph& g = gh.graph;
  const GadgetRegistry& reg = gh.registry;
  if (!is_semi_default(g, reg, m1) || !is_semi_default(g, reg, m2))
    throw StateNotSemiDefault("synthesis needs semi-default end points");
  const int hc = static_cast<int>(gh.profile.city_height);
  const int cycles = 2 * hc;
  const int n = gh.instance.n();

  auto tower_paths = plan_towers(g, reg, hc, m1, m2);

  LadderModel lm;
  LadderTransferGraph tg = ladder_transfer_graph(lm);
  Synthesis out;
  std::vector<std::vector<std::vector<VertexId>>> ladder_paths(gh.forall.size());
  for (size_t i = 0; i < gh.forall.size(); ++i) {
    std::string demand;
    for (int l : children_of_kind(reg, gh.forall[i], GadgetKind::kLadder)) {
      const auto& h = reg.at(l);
      LadderPlan plan = ladder_transfer_plan(lm, tg, lm.local_state(g, h, m1), lm.local_state(g, h, m2));
      demand += plan.directions;
      for (const auto& step : plan.steps) ladder_paths[i].push_back(lm.to_host(h, lm.gadget_path(step)));
    }
    if (static_cast<int>(demand.size()) != cycles) throw ProfileMismatch("demand string length differs from 2h_c");
    out.demand.push_back(demand);
  }

  DetourIndex di(reg);
  std::map<Pattern, std::vector<int>> cache;
  out.sequence.start = m1;
  for (int pair = 0; pair < hc; ++pair) {
    Pattern p;
    for (const auto& d : out.demand) p.picks_e.push_back(d[2 * pair] == 't');
    auto it = cache.find(p);
    if (it == cache.end()) {
      auto route = provider(p);
      if (!route) throw HamProviderFailed(p);
      if (!respects_pattern(gh.instance, *route, p))
        throw Error("provider returned a cycle that does not respect " + p.str());
      it = cache.emplace(p, *route).first;
    }
    const std::vector<int>& route = it->second;
    out.patterns.push_back(p);
    out.routes.push_back(route);
    for (int c = 2 * pair; c <= 2 * pair + 1; ++c) {
      TowerPathFn tp = [&](int tower) { return tower_paths[tower][c]; };
      std::vector<VertexId> walk{gh.v_in[route[0]]};
      for (int idx = 0; idx < n; ++idx) {
        const int y = route[idx], z = route[(idx + 1) % n];
        append_city(reg, gh.vertex_city[y], true, tp, walk);
        const int i = gh.instance.pair_of(y);
        if (i >= 0) {
          append_forall(reg, di, gh.forall[i], p.picks_e[i] ? Direction::kTop : Direction::kBottom,
                        ladder_paths[i][c], tp, walk);
          if (walk.back() != gh.v_in[z]) throw Error("forall route ends at the wrong vertex");
        } else {
          walk.push_back(gh.v_in[z]);
        }
      }
      walk.pop_back();
      out.sequence.cycles.push_back(edges_of_closed_walk(g, walk));
    }
  }
  check_sequence(g, reg, m1, m2, out.sequence.cycles);
  return out;
}

Extraction extract_ham_cycle(const GhGraph& gh, const EdgeSet& cycle) {
  const Graph& g = gh.graph;
  const GadgetRegistry& reg = gh.registry;
  auto order = cycle_vertex_order(g, cycle);
  if (!order) throw NotRegular("edge set is not a simple cycle");
  if (!is_regular(g, reg, cycle)) throw NotRegular("cycle misses a city");
  const int n = gh.instance.n();
  std::vector<int> h_of(g.num_vertices(), -1);
  for (int v = 0; v < n; ++v) h_of[gh.v_in[v]] = v;
  auto& ord = *order;
  const int len = static_cast<int>(ord.size());
  auto find = [&](VertexId x) { return static_cast<int>(std::find(ord.begin(), ord.end(), x) - ord.begin()); };
  int p0 = find(gh.v_in[0]);
  const VertexId first_a0 = reg.at(reg.at(gh.vertex_city[0]).children.front()).role("a_0");
  if (ord[(p0 + 1) % len] != first_a0) {
    std::reverse(ord.begin(), ord.end());
    p0 = find(gh.v_in[0]);
  }
  Extraction ex;
  for (int j = 0; j < len; ++j) {
    int v = h_of[ord[(p0 + j) % len]];
    if (v >= 0) ex.route.push_back(v);
  }
  for (size_t i = 0; i < gh.forall.size(); ++i) {
    CycleClass cc = classify_cycle(g, reg, gh.forall[i], cycle);
    if (cc.verdict == CycleVerdict::kTopState)
      ex.pattern.picks_e.push_back(true);
    else if (cc.verdict == CycleVerdict::kBottomState)
      ex.pattern.picks_e.push_back(false);
    else
      throw NotRegular("forall gadget " + std::to_string(i + 1) + " is not traversed in a top or bottom state");
  }
  if (!respects_pattern(gh.instance, ex.route, ex.pattern))
    throw NotRegular("extracted route is not a Hamiltonian cycle respecting " + ex.pattern.str());
  return ex;
}

RegularityCensus regularity_census(const Graph& g, const GadgetRegistry& reg, const FlipSequence& seq) {
  RegularityCensus r;
  auto cities = reg.of_kind(GadgetKind::kCity);
  r.city_visits.assign(cities.size(), 0);
  PerfectMatching cur = seq.start;
  for (const auto& c : seq.cycles) {
    bool regular = true;
    for (size_t i = 0; i < cities.size(); ++i) {
      if (city_visited(g, reg, cities[i], c))
        ++r.city_visits[i];
      else
        regular = false;
    }
    ++(regular ? r.regular : r.irregular);
    cur = flip(cur, c);
  }
  auto towers = reg.of_kind(GadgetKind::kTower);
  bool all_locked = !towers.empty(), all_default = !towers.empty();
  for (int t : towers) {
    all_locked = all_locked && classify_state(g, reg, t, seq.start).label == StateLabel::kLocked;
    all_default = all_default && classify_state(g, reg, t, cur).label == StateLabel::kDefault;
  }
  r.locked_to_default = all_locked && all_default;
  if (r.locked_to_default) {
    for (size_t i = 0; i < cities.size(); ++i)
      if (r.city_visits[i] < 2 * reg.at(cities[i]).param("height") - 2)
        r.under_visited.push_back(static_cast<int>(i));
  }
  return r;
}

// ---- folklore reduction ----------------------------------------------------------

int64_t folklore_vertex_count(const CnfFormula& f) {
  int64_t lits = 0;
  for (const auto& c : f.clauses) lits += c.size();
  return 3 + 2 * int64_t{f.num_vars} + lits + 12 * (f.num_vars + lits);
}

FolkloreGraph build_folklore_hc(const CnfFormula& f) {
  f.validate();
  if (f.num_vars < 1) throw InstanceInvalid("formula needs at least one variable");
  for (size_t j = 0; j < f.clauses.size(); ++j)
    if (f.clauses[j].size() > 3)
      throw ClauseTooLarge("clause " + std::to_string(j + 1) + " has " +
                           std::to_string(f.clauses[j].size()) + " literals");
  FolkloreGraph out;
  out.formula = f;
  GraphBuilder b;
  const int k = f.num_vars;
  out.v1 = b.add_vertex("v1", Side::kNone);
  out.v2 = b.add_vertex("v2", Side::kNone);
  out.v3 = b.add_vertex("v3", Side::kNone);
  for (int i = 1; i <= 2 * k; ++i) out.z.push_back(b.add_vertex("z" + std::to_string(i), Side::kNone));
  const Connector single{ConnectorKind::kVertex, {}};
  std::vector<LogicalEdge> lit;  // e_i at 2(i-1), ebar_i at 2(i-1)+1
  for (int i = 0; i < k; ++i) {
    lit.push_back(make_logical_edge(b, out.z[2 * i], out.z[2 * i + 1]));
    lit.push_back(make_logical_edge(b, out.z[2 * i], out.z[2 * i + 1]));
    add_xor(b, lit[2 * i], lit[2 * i + 1], single);
  }
  for (size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& c = f.clauses[j];
    const int t = static_cast<int>(c.size());
    std::vector<VertexId> u;
    for (int i = 1; i <= t; ++i)
      u.push_back(b.add_vertex("c" + std::to_string(j + 1) + "u" + std::to_string(i), Side::kNone));
    for (int i = 0; i < t; ++i) {
      // The i-th edge of a cycle of length t: a loop, two parallel edges or a triangle.
      LogicalEdge ce = t == 2 ? make_logical_edge(b, u[0], u[1])
                              : make_logical_edge(b, u[i], u[(i + 1) % t]);
      const int var = std::abs(c[i]) - 1;
      add_xor(b, lit[2 * var + (c[i] > 0 ? 0 : 1)], ce, single);
    }
    out.clause_vertices.push_back(std::move(u));
  }
  b.add_edge(out.v1, out.v2);
  b.add_edge(out.v2, out.z.front());
  b.add_edge(out.z.back(), out.v3);
  for (int i = 1; i < k; ++i) b.add_edge(out.z[2 * i - 1], out.z[2 * i]);
  std::vector<VertexId> clique{out.v1, out.v3};
  for (const auto& u : out.clause_vertices) clique.insert(clique.end(), u.begin(), u.end());
  for (size_t a = 0; a < clique.size(); ++a)
    for (size_t c = a + 1; c < clique.size(); ++c) b.add_edge(clique[a], clique[c]);
  out.graph = b.build_graph();
  out.registry = b.registry();
  for (const auto& l : lit) out.literal_paths.push_back(l.path);
  return out;
}

// ---- inapproximability graph -------------------------------------------------------

CityScale inapprox_paper_scale(int64_t n) {
  __int128 h = static_cast<__int128>(n) * n;
  __int128 w = 4 * h + 4 * static_cast<__int128>(n);
  if (w > std::numeric_limits<int>::max()) throw InfeasibleScale("inapproximability scale overflows");
  return CityScale{static_cast<int>(w), static_cast<int>(h)};
}

InapproxGraph build_inapprox_G(const Graph& h, CityScale scale) {
  InapproxGraph out;
  out.h = h;
  out.scale = scale;
  const __int128 size = static_cast<__int128>(h.num_vertices()) *
                        (static_cast<__int128>(scale.width) * (2 * scale.height + 2) + 2);
  if (size > kMaxBuildVertices)
    throw InfeasibleScale("G would have " + std::to_string(static_cast<int64_t>(size)) + " vertices");
  GraphBuilder b;
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    out.v_in.push_back(b.add_vertex("h" + std::to_string(v) + "_in", Side::kLeft));
    out.v_out.push_back(b.add_vertex("h" + std::to_string(v) + "_out", Side::kRight));
  }
  for (VertexId v = 0; v < h.num_vertices(); ++v)
    out.city.push_back(add_city(b, out.v_in[v], out.v_out[v], scale));
  for (const auto& e : h.edges()) {
    b.add_edge(out.v_out[e.u], out.v_in[e.v]);
    b.add_edge(out.v_out[e.v], out.v_in[e.u]);
  }
  out.graph = b.build_bipartite();
  out.registry = b.registry();
  return out;
}

PerfectMatching inapprox_locked_matching(const InapproxGraph& g) {
  return tower_matching(g.graph, g.registry, true, {});
}

PerfectMatching inapprox_default_matching(const InapproxGraph& g) {
  return tower_matching(g.graph, g.registry, false, {});
}

Projection inapprox_projection(const InapproxGraph& g, const PerfectMatching& m) {
  return project_onto(g.graph, m, inapprox_default_matching(g), g.v_in);
}

FlipSequence synthesize_inapprox_sequence(const InapproxGraph& g, const PerfectMatching& m1,
                                          const PerfectMatching& m2,
                                          const std::vector<VertexId>& ham) {
  if (!is_ham_cycle(g.h, ham)) throw NotHamiltonian("route is not a Hamiltonian cycle of H");
  if (!is_semi_default(g.graph, g.registry, m1) || !is_semi_default(g.graph, g.registry, m2))
    throw StateNotSemiDefault("synthesis needs semi-default end points");
  const int hc = g.scale.height;
  auto tower_paths = plan_towers(g.graph, g.registry, hc, m1, m2);
  FlipSequence seq;
  seq.start = m1;
  const int n = static_cast<int>(ham.size());
  for (int c = 0; c < 2 * hc; ++c) {
    TowerPathFn tp = [&](int tower) { return tower_paths[tower][c]; };
    std::vector<VertexId> walk{g.v_in[ham[0]]};
    for (int idx = 0; idx < n; ++idx) {
      append_city(g.registry, g.city[ham[idx]], true, tp, walk);
      walk.push_back(g.v_in[ham[(idx + 1) % n]]);
    }
    walk.pop_back();
    seq.cycles.push_back(edges_of_closed_walk(g.graph, walk));
  }
  check_sequence(g.graph, g.registry, m1, m2, seq.cycles);
  return seq;
}

WalkRecord extract_walk(const InapproxGraph& g, const EdgeSet& cycle) {
  auto order = cycle_vertex_order(g.graph, cycle);
  if (!order) throw Error("edge set is not a simple cycle");
  std::vector<int> owner(g.graph.num_vertices(), -1);
  for (size_t v = 0; v < g.v_in.size(); ++v) owner[g.v_in[v]] = owner[g.v_out[v]] = static_cast<int>(v);
  std::vector<VertexId> walk;
  const auto& ord = *order;
  for (size_t j = 0; j < ord.size(); ++j) {
    VertexId a = ord[j], b = ord[(j + 1) % ord.size()];
    if (owner[a] >= 0 && owner[b] >= 0 && owner[a] != owner[b]) walk.push_back(owner[b]);
  }
  return make_walk_record(g.h, std::move(walk));
}

EpsilonConstants epsilon_constants() {
  EpsilonConstants c;
  c.eps1 = Rational(1, 19);
  c.d = 13;
  c.eps2 = c.eps1 / Rational(61 * (c.d + 1));
  c.eps = c.eps2;
  return c;
}

}  // namespace bpm
