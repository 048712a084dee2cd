#include "bpm/gadgets.h"

#include <algorithm>
#include <unordered_set>

namespace bpm {

namespace {

std::string idx(const char* base, int i) { return std::string(base) + std::to_string(i); }
std::string rname(const char* base, int i) { return std::string(base) + "_" + std::to_string(i); }

Side alt(Side s, int i) { return i % 2 == 0 ? s : opposite(s); }

void expect_side(const GraphBuilder& b, VertexId v, Side want, const char* what) {
  if (b.side(v) != want && want != Side::kNone && b.side(v) != Side::kNone)
    throw WrongGraph(std::string(what) + ": vertex " + b.id(v) + " is on the wrong side");
}

bool in_set(const EdgeSet& s, EdgeId e) { return std::binary_search(s.begin(), s.end(), e); }

bool has_edge(const Graph& g, const EdgeSet& s, VertexId u, VertexId v) {
  auto e = g.find_edge(u, v);
  return e && in_set(s, *e);
}

}  // namespace

int add_tower(GraphBuilder& b, VertexId v, VertexId a0, VertexId w, int h) {
  if (h < 1) throw ScaleInvalid("tower height must be at least 1");
  auto& reg = b.registry();
  int id = reg.add(GadgetKind::kTower, {{"h", h}});
  const std::string pre = "T" + std::to_string(id) + ".";
  const Side sa = opposite(b.side(v));  // side of a_0
  if (a0 < 0) {
    a0 = b.add_vertex(pre + "a0", sa);
    b.add_edge(v, a0);
  } else {
    expect_side(b, a0, sa, "tower a_0");
    if (b.find_edge(v, a0) < 0) throw WrongGraph("tower entry edge v a_0 missing");
  }
  expect_side(b, w, sa, "tower w");
  std::vector<VertexId> a(h + 1), bb(h + 1);
  a[0] = a0;
  for (int i = 1; i <= h; ++i) a[i] = b.add_vertex(pre + idx("a", i), alt(sa, i));
  for (int i = 0; i <= h; ++i) bb[i] = b.add_vertex(pre + idx("b", i), opposite(alt(sa, i)));
  b.add_edge(bb[0], w);
  for (int i = 0; i <= h; ++i) b.add_edge(a[i], bb[i]);
  for (int i = 1; i <= h; ++i) {
    b.add_edge(a[i], a[i - 1]);
    b.add_edge(bb[i], bb[i - 1]);
  }
  b.set_role(id, "v", v);
  b.set_role(id, "w", w);
  for (int i = 0; i <= h; ++i) {
    b.set_role(id, rname("a", i), a[i]);
    b.set_role(id, rname("b", i), bb[i]);
  }
  return id;
}

int add_city(GraphBuilder& b, VertexId x, VertexId y, CityScale s) {
  if (s.width < 1 || s.height < 1) throw ScaleInvalid("city width and height must be positive");
  auto& reg = b.registry();
  int id = reg.add(GadgetKind::kCity, {{"width", s.width}, {"height", s.height}});
  expect_side(b, y, opposite(b.side(x)), "city exit");
  VertexId v = x, a0 = -1;
  for (int i = 1; i <= s.width; ++i) {
    VertexId w = i == s.width
                     ? y
                     : b.add_vertex("C" + std::to_string(id) + ".j" + std::to_string(i),
                                    opposite(b.side(x)));
    int t = add_tower(b, v, a0, w, s.height);
    reg.adopt(id, t);
    v = reg.at(t).role("b_0");
    a0 = w;
  }
  b.set_role(id, "x", x);
  b.set_role(id, "y", y);
  return id;
}

int add_ladder(GraphBuilder& b, VertexId a0, VertexId b0, VertexId a6, VertexId b6) {
  auto& reg = b.registry();
  int id = reg.add(GadgetKind::kLadder, {});
  const std::string pre = "L" + std::to_string(id) + ".";
  const Side sa = b.side(a0);
  expect_side(b, a6, sa, "ladder a_6");
  expect_side(b, b0, opposite(sa), "ladder b_0");
  expect_side(b, b6, opposite(sa), "ladder b_6");
  std::vector<VertexId> a(7), bb(7);
  a[0] = a0, a[6] = a6, bb[0] = b0, bb[6] = b6;
  for (int i = 1; i <= 5; ++i) {
    a[i] = b.add_vertex(pre + idx("a", i), alt(sa, i));
    bb[i] = b.add_vertex(pre + idx("b", i), opposite(alt(sa, i)));
  }
  for (int i = 1; i <= 5; ++i) b.add_edge(a[i], bb[i]);
  for (int i = 0; i <= 5; ++i) {
    b.add_edge(a[i], a[i + 1]);
    b.add_edge(bb[i], bb[i + 1]);
  }
  for (int i = 0; i <= 6; ++i) {
    b.set_role(id, rname("a", i), a[i]);
    b.set_role(id, rname("b", i), bb[i]);
  }
  return id;
}

LogicalEdge make_logical_edge(GraphBuilder& b, VertexId p, VertexId q) {
  LogicalEdge e;
  e.path = {p, q};
  e.front = b.add_edge(p, q);
  return e;
}

int add_xor(GraphBuilder& b, LogicalEdge& e1, LogicalEdge& e2, const Connector& c) {
  auto& reg = b.registry();
  const VertexId a = e1.path[0], bv = e1.path[1];
  const VertexId w1 = e2.path[0], w2 = e2.path[1];
  const bool sided = b.side(a) != Side::kNone && b.side(w1) != Side::kNone;
  // Keep the result bipartite: a and u must lie on opposite sides.
  const bool mirrored = sided && b.side(w1) == b.side(a);
  const VertexId u = mirrored ? w2 : w1, v = mirrored ? w1 : w2;
  int id = reg.add(GadgetKind::kXor, {{"mirrored", mirrored ? 1 : 0}});
  const std::string pre = "X" + std::to_string(id) + ".";

  std::vector<VertexId> xs = b.subdivide(e1.front, a, 4, pre + "x");
  e1.path.insert(e1.path.begin() + 1, xs.begin(), xs.end());
  e1.front = b.find_edge(e1.path[0], e1.path[1]);

  std::vector<VertexId> ys = b.subdivide(e2.front, u, 4, pre + "y");
  if (mirrored)
    e2.path.insert(e2.path.begin() + 1, ys.rbegin(), ys.rend());
  else
    e2.path.insert(e2.path.begin() + 1, ys.begin(), ys.end());
  e2.front = b.find_edge(e2.path[0], e2.path[1]);

  for (int i = 0; i < 4; ++i) {
    if (c.kind == ConnectorKind::kCity) {
      reg.adopt(id, add_city(b, xs[i], ys[i], c.scale));
    } else {
      VertexId m = b.add_vertex(pre + idx("m", i + 1), Side::kNone);
      b.add_edge(xs[i], m);
      b.add_edge(m, ys[i]);
      b.set_role(id, rname("m", i + 1), m);
    }
  }
  b.set_role(id, "a", a);
  b.set_role(id, "b", bv);
  b.set_role(id, "u", u);
  b.set_role(id, "v", v);
  for (int i = 0; i < 4; ++i) {
    b.set_role(id, rname("x", i + 1), xs[i]);
    b.set_role(id, rname("y", i + 1), ys[i]);
  }
  return id;
}

int add_forall(GraphBuilder& b, VertexId v_out, VertexId u_in, VertexId w_in, int t,
               CityScale s) {
  if (t < 1) throw ScaleInvalid("forall gadget needs at least one ladder");
  auto& reg = b.registry();
  int id = reg.add(GadgetKind::kForall,
                   {{"t", t}, {"width", s.width}, {"height", s.height}});
  const std::string pre = "F" + std::to_string(id) + ".";
  const Side odd = opposite(b.side(v_out));
  expect_side(b, u_in, odd, "forall u_in");
  expect_side(b, w_in, odd, "forall w_in");
  std::vector<VertexId> x(11, -1);
  for (int i = 1; i <= 10; ++i) x[i] = b.add_vertex(pre + idx("x", i), i % 2 ? odd : opposite(odd));

  for (auto [p, q] : {std::pair{1, 2}, {3, 4}, {5, 6}, {7, 8}})
    reg.adopt(id, add_city(b, x[p], x[q], s));
  b.add_edge(v_out, x[1]);
  b.add_edge(v_out, x[5]);
  b.add_edge(x[1], x[8]);
  b.add_edge(x[5], x[4]);
  b.add_edge(x[4], x[9]);
  b.add_edge(x[8], x[9]);
  b.add_edge(x[9], x[10]);

  LogicalEdge l23 = make_logical_edge(b, x[2], x[3]);
  LogicalEdge l67 = make_logical_edge(b, x[6], x[7]);
  LogicalEdge l10u = make_logical_edge(b, x[10], u_in);
  LogicalEdge l10w = make_logical_edge(b, x[10], w_in);
  Connector conn{ConnectorKind::kCity, s};
  reg.adopt(id, add_xor(b, l23, l67, conn));
  reg.adopt(id, add_xor(b, l23, l10u, conn));
  reg.adopt(id, add_xor(b, l67, l10w, conn));
  for (int i = 0; i < t; ++i) reg.adopt(id, add_ladder(b, x[6], x[7], x[2], x[3]));

  b.set_role(id, "v_out", v_out);
  b.set_role(id, "u_in", u_in);
  b.set_role(id, "w_in", w_in);
  for (int i = 1; i <= 10; ++i) b.set_role(id, rname("x", i), x[i]);
  auto& h = reg.at(id);
  h.paths["x2x3"] = l23.path;
  h.paths["x6x7"] = l67.path;
  h.paths["x10u"] = l10u.path;
  h.paths["x10w"] = l10w.path;
  return id;
}

BuiltGadget build_tower(int h) {
  GraphBuilder b;
  VertexId v = b.add_vertex("v", Side::kLeft);
  VertexId w = b.add_vertex("w", Side::kRight);
  BuiltGadget out;
  out.root = add_tower(b, v, -1, w, h);
  out.graph = b.build_bipartite();
  out.registry = b.registry();
  return out;
}

BuiltGadget build_city(CityScale s) {
  GraphBuilder b;
  VertexId x = b.add_vertex("x", Side::kLeft);
  VertexId y = b.add_vertex("y", Side::kRight);
  BuiltGadget out;
  out.root = add_city(b, x, y, s);
  out.graph = b.build_bipartite();
  out.registry = b.registry();
  return out;
}

BuiltGadget build_ladder() {
  GraphBuilder b;
  VertexId a0 = b.add_vertex("a0", Side::kLeft);
  VertexId b0 = b.add_vertex("b0", Side::kRight);
  VertexId a6 = b.add_vertex("a6", Side::kLeft);
  VertexId b6 = b.add_vertex("b6", Side::kRight);
  BuiltGadget out;
  out.root = add_ladder(b, a0, b0, a6, b6);
  out.graph = b.build_bipartite();
  out.registry = b.registry();
  return out;
}

BuiltGadget build_forall(int t, CityScale s) {
  GraphBuilder b;
  VertexId v_out = b.add_vertex("v_out", Side::kRight);
  VertexId u_in = b.add_vertex("u_in", Side::kLeft);
  VertexId w_in = b.add_vertex("w_in", Side::kLeft);
  BuiltGadget out;
  out.root = add_forall(b, v_out, u_in, w_in, t, s);
  out.graph = b.build_bipartite();
  out.registry = b.registry();
  return out;
}

BuiltGadget insert_xor(const BipartiteGraph& g, EdgeId e1, EdgeId e2, CityScale s) {
  if (e1 < 0 || e1 >= g.num_edges()) throw EdgeNotFound(-1, -1);
  if (e2 < 0 || e2 >= g.num_edges()) throw EdgeNotFound(-1, -1);
  if (e1 == e2) throw WrongGraph("XOR needs two distinct edges");
  GraphBuilder b = GraphBuilder::from_graph(g);
  LogicalEdge l1{{g.edge(e1).u, g.edge(e1).v}, b.find_edge(g.edge(e1).u, g.edge(e1).v)};
  LogicalEdge l2{{g.edge(e2).u, g.edge(e2).v}, b.find_edge(g.edge(e2).u, g.edge(e2).v)};
  BuiltGadget out;
  out.root = add_xor(b, l1, l2, Connector{ConnectorKind::kCity, s});
  out.graph = b.build_bipartite();
  out.registry = b.registry();
  return out;
}

std::vector<int> children_of_kind(const GadgetRegistry& reg, int id, GadgetKind k) {
  std::vector<int> out;
  for (int c : reg.at(id).children)
    if (reg.at(c).kind == k) out.push_back(c);
  return out;
}

std::vector<int> descendants_of_kind(const GadgetRegistry& reg, int root, GadgetKind k) {
  std::vector<int> out, stack{root};
  while (!stack.empty()) {
    int g = stack.back();
    stack.pop_back();
    if (reg.at(g).kind == k) out.push_back(g);
    const auto& ch = reg.at(g).children;
    stack.insert(stack.end(), ch.rbegin(), ch.rend());
  }
  return out;
}

const char* state_name(StateLabel s) {
  switch (s) {
    case StateLabel::kDefault: return "Default";
    case StateLabel::kLocked: return "Locked";
    case StateLabel::kSemiDefault: return "SemiDefault";
    case StateLabel::kTopOpen: return "TopOpen";
    case StateLabel::kBottomOpen: return "BottomOpen";
    case StateLabel::kMatched: return "Matched";
    case StateLabel::kOther: return "Other";
  }
  return "?";
}

namespace {

GadgetState tower_state(const Graph& g, const GadgetHandle& h, const EdgeSet& m) {
  const int ht = h.param("h");
  auto R = [&](const char* b, int i) { return h.role(rname(b, i)); };
  GadgetState st;
  st.semi_default = has_edge(g, m, h.role("v"), R("a", 0));
  for (int i = 1; i <= ht; ++i)
    if (has_edge(g, m, R("a", i), R("b", i))) st.horizontals.push_back(i);
  if (!st.semi_default) return st;
  if (static_cast<int>(st.horizontals.size()) == ht) {
    st.label = StateLabel::kDefault;
  } else if (ht >= 2 && static_cast<int>(st.horizontals.size()) == ht - 2 &&
             (ht == 2 || st.horizontals.back() == ht - 2) &&
             has_edge(g, m, R("a", ht), R("a", ht - 1)) &&
             has_edge(g, m, R("b", ht), R("b", ht - 1))) {
    st.label = StateLabel::kLocked;
  } else {
    st.label = StateLabel::kSemiDefault;
  }
  return st;
}

GadgetState ladder_state(const Graph& g, const GadgetHandle& h, const EdgeSet& m) {
  auto R = [&](const char* b, int i) { return h.role(rname(b, i)); };
  GadgetState st;
  st.semi_default = !has_edge(g, m, R("a", 0), R("a", 1)) && !has_edge(g, m, R("b", 0), R("b", 1)) &&
                    !has_edge(g, m, R("a", 5), R("a", 6)) && !has_edge(g, m, R("b", 5), R("b", 6));
  for (int i = 1; i <= 5; ++i)
    if (has_edge(g, m, R("a", i), R("b", i))) st.horizontals.push_back(i);
  if (!st.semi_default) return st;
  const auto& hz = st.horizontals;
  if (hz == std::vector<int>{1, 2, 3, 4, 5})
    st.label = StateLabel::kDefault;
  else if (hz == std::vector<int>{5})
    st.label = StateLabel::kBottomOpen;
  else if (hz == std::vector<int>{1})
    st.label = StateLabel::kTopOpen;
  else
    st.label = StateLabel::kSemiDefault;
  return st;
}

bool city_matched(const Graph& g, const GadgetRegistry& reg, int city, const EdgeSet& m) {
  const auto& h = reg.at(city);
  const auto& t1 = reg.at(h.children.front());
  return has_edge(g, m, h.role("x"), t1.role("a_0"));
}

bool xor_semi(const Graph& g, const GadgetRegistry& reg, int x, const EdgeSet& m) {
  for (int c : children_of_kind(reg, x, GadgetKind::kCity))
    if (!city_matched(g, reg, c, m)) return false;
  return true;
}

}  // namespace

GadgetState classify_state(const Graph& g, const GadgetRegistry& reg, int id,
                           const PerfectMatching& m) {
  const auto& h = reg.at(id);
  switch (h.kind) {
    case GadgetKind::kTower: return tower_state(g, h, m.edges);
    case GadgetKind::kLadder: return ladder_state(g, h, m.edges);
    case GadgetKind::kCity: {
      GadgetState st;
      st.semi_default = city_matched(g, reg, id, m.edges);
      st.label = st.semi_default ? StateLabel::kMatched : StateLabel::kOther;
      return st;
    }
    case GadgetKind::kXor: {
      GadgetState st;
      st.semi_default = xor_semi(g, reg, id, m.edges);
      st.label = st.semi_default ? StateLabel::kSemiDefault : StateLabel::kOther;
      return st;
    }
    case GadgetKind::kForall: {
      GadgetState st;
      bool ok = has_edge(g, m.edges, h.role("x_9"), h.role("x_10"));
      for (int c : children_of_kind(reg, id, GadgetKind::kCity))
        ok = ok && city_matched(g, reg, c, m.edges);
      for (int x : children_of_kind(reg, id, GadgetKind::kXor))
        ok = ok && xor_semi(g, reg, x, m.edges);
      st.semi_default = ok;
      st.label = ok ? StateLabel::kSemiDefault : StateLabel::kOther;
      return st;
    }
  }
  return {};
}

bool is_semi_default(const Graph& g, const GadgetRegistry& reg, const PerfectMatching& m) {
  for (const auto& h : reg.all()) {
    if (h.kind == GadgetKind::kCity && !city_matched(g, reg, h.id, m.edges)) return false;
    if (h.kind == GadgetKind::kForall && !has_edge(g, m.edges, h.role("x_9"), h.role("x_10")))
      return false;
  }
  return true;
}

char direction_char(Direction d) {
  switch (d) {
    case Direction::kTop: return 't';
    case Direction::kBottom: return 'b';
    case Direction::kThrough: return 'p';
    default: return '-';
  }
}

const char* verdict_name(CycleVerdict v) {
  switch (v) {
    case CycleVerdict::kNotVisiting: return "NotVisiting";
    case CycleVerdict::kVisiting: return "Visiting";
    case CycleVerdict::kWellBehaved: return "WellBehaved";
    case CycleVerdict::kIllBehaved: return "IllBehaved";
    case CycleVerdict::kTopState: return "TopState";
    case CycleVerdict::kBottomState: return "BottomState";
    case CycleVerdict::kIrregular: return "Irregular";
  }
  return "?";
}

namespace {

std::vector<std::pair<VertexId, VertexId>> tower_edge_pairs(const GadgetHandle& h) {
  const int ht = h.param("h");
  auto R = [&](const char* b, int i) { return h.role(rname(b, i)); };
  std::vector<std::pair<VertexId, VertexId>> es{{h.role("v"), R("a", 0)}, {R("b", 0), h.role("w")}};
  for (int i = 0; i <= ht; ++i) es.emplace_back(R("a", i), R("b", i));
  for (int i = 1; i <= ht; ++i) {
    es.emplace_back(R("a", i), R("a", i - 1));
    es.emplace_back(R("b", i), R("b", i - 1));
  }
  return es;
}

CycleClass tower_cycle(const Graph& g, const GadgetHandle& h, const EdgeSet& c) {
  std::unordered_map<VertexId, int> deg;
  for (auto [u, v] : tower_edge_pairs(h)) {
    if (has_edge(g, c, u, v)) {
      ++deg[u];
      ++deg[v];
    }
  }
  CycleClass cc;
  if (deg.empty()) return cc;
  const VertexId v = h.role("v"), w = h.role("w");
  bool path = deg.count(v) && deg.count(w) && deg[v] == 1 && deg[w] == 1;
  for (const auto& [x, d] : deg)
    if (x != v && x != w && d != 2) path = false;
  // The whole cycle is simple, so with v and w as the only leaves the
  // restriction is a single v-w path.
  cc.verdict = path ? CycleVerdict::kWellBehaved : CycleVerdict::kIllBehaved;
  cc.direction = path ? Direction::kThrough : Direction::kNone;
  return cc;
}

CycleClass ladder_cycle(const Graph& g, const GadgetHandle& h, const EdgeSet& c,
                        const std::unordered_set<VertexId>& on_cycle) {
  auto R = [&](const char* b, int i) { return h.role(rname(b, i)); };
  CycleClass cc;
  bool touches = false;
  for (int i = 1; i <= 5 && !touches; ++i)
    touches = on_cycle.count(R("a", i)) || on_cycle.count(R("b", i));
  if (!touches) return cc;
  bool top = has_edge(g, c, R("a", 5), R("a", 6)) && has_edge(g, c, R("b", 5), R("b", 6));
  bool bottom = has_edge(g, c, R("a", 0), R("a", 1)) && has_edge(g, c, R("b", 0), R("b", 1));
  bool any_top = has_edge(g, c, R("a", 5), R("a", 6)) || has_edge(g, c, R("b", 5), R("b", 6));
  bool any_bottom = has_edge(g, c, R("a", 0), R("a", 1)) || has_edge(g, c, R("b", 0), R("b", 1));
  if (top && !any_bottom) {
    cc.verdict = CycleVerdict::kWellBehaved;
    cc.direction = Direction::kTop;
  } else if (bottom && !any_top) {
    cc.verdict = CycleVerdict::kWellBehaved;
    cc.direction = Direction::kBottom;
  } else {
    cc.verdict = CycleVerdict::kIllBehaved;
  }
  return cc;
}

std::unordered_set<VertexId> cycle_vertices(const Graph& g, const EdgeSet& c) {
  std::unordered_set<VertexId> s;
  for (EdgeId e : c) {
    s.insert(g.edge(e).u);
    s.insert(g.edge(e).v);
  }
  return s;
}

}  // namespace

bool city_visited(const Graph& g, const GadgetRegistry& reg, int city, const EdgeSet& cycle) {
  return city_matched(g, reg, city, cycle);
}

bool is_regular(const Graph& g, const GadgetRegistry& reg, const EdgeSet& cycle) {
  for (const auto& h : reg.all())
    if (h.kind == GadgetKind::kCity && !city_visited(g, reg, h.id, cycle)) return false;
  return true;
}

bool uses_logical_path(const Graph& g, const std::vector<VertexId>& path, const EdgeSet& cycle) {
  if (path.size() == 2) return has_edge(g, cycle, path[0], path[1]);
  return has_edge(g, cycle, path[2], path[3]);
}

CycleClass classify_cycle(const Graph& g, const GadgetRegistry& reg, int id,
                          const EdgeSet& cycle) {
  if (!cycle_vertex_order(g, cycle)) throw Error("not a simple cycle");
  const auto& h = reg.at(id);
  switch (h.kind) {
    case GadgetKind::kTower: return tower_cycle(g, h, cycle);
    case GadgetKind::kLadder: return ladder_cycle(g, h, cycle, cycle_vertices(g, cycle));
    case GadgetKind::kCity: {
      CycleClass cc;
      if (city_visited(g, reg, id, cycle)) cc.verdict = CycleVerdict::kVisiting;
      return cc;
    }
    case GadgetKind::kXor: {
      CycleClass cc;
      cc.uses_first = has_edge(g, cycle, h.role("x_2"), h.role("x_3"));
      cc.uses_second = has_edge(g, cycle, h.role("y_2"), h.role("y_3"));
      for (int c : children_of_kind(reg, id, GadgetKind::kCity))
        if (city_visited(g, reg, c, cycle)) cc.verdict = CycleVerdict::kVisiting;
      return cc;
    }
    case GadgetKind::kForall: {
      CycleClass cc;
      auto on = cycle_vertices(g, cycle);
      auto ladders = children_of_kind(reg, id, GadgetKind::kLadder);
      for (size_t i = 0; i < ladders.size(); ++i)
        if (ladder_cycle(g, reg.at(ladders[i]), cycle, on).verdict != CycleVerdict::kNotVisiting)
          cc.visited_ladders.push_back(static_cast<int>(i));
      bool up = uses_logical_path(g, h.paths.at("x10u"), cycle);
      bool wp = uses_logical_path(g, h.paths.at("x10w"), cycle);
      bool touched = false;
      for (const auto& [r, v] : h.roles)
        if (r.rfind("x_", 0) == 0 && on.count(v)) touched = true;
      if (up && !wp) {
        cc.verdict = CycleVerdict::kTopState;
        cc.direction = Direction::kTop;
      } else if (wp && !up) {
        cc.verdict = CycleVerdict::kBottomState;
        cc.direction = Direction::kBottom;
      } else if (touched || !cc.visited_ladders.empty()) {
        cc.verdict = CycleVerdict::kIrregular;
      }
      return cc;
    }
  }
  return {};
}

std::vector<VertexId> canonical_tower_path(const GadgetRegistry& reg, int tower) {
  const auto& h = reg.at(tower);
  return {h.role("v"), h.role("a_0"), h.role("b_0"), h.role("w")};
}

DetourIndex::DetourIndex(const GadgetRegistry& reg) {
  for (const auto& h : reg.all()) {
    if (h.kind != GadgetKind::kXor) continue;
    auto cities = children_of_kind(reg, h.id, GadgetKind::kCity);
    for (int i = 1; i <= 4; ++i) {
      VertexId x = h.role(rname("x", i)), y = h.role(rname("y", i));
      Detour dx, dy;
      dx.partner = y;
      dy.partner = x;
      if (!cities.empty()) {
        dx.city = dy.city = cities[i - 1];
      } else {
        dx.middle = dy.middle = h.role(rname("m", i));
      }
      dx.from_entry = true;
      dy.from_entry = false;
      map_[x] = dx;
      map_[y] = dy;
    }
  }
}

const DetourIndex::Detour& DetourIndex::at(VertexId v) const {
  auto it = map_.find(v);
  if (it == map_.end()) throw WrongGraph("vertex " + std::to_string(v) + " is not an XOR subdivision");
  return it->second;
}

void append_city(const GadgetRegistry& reg, int city, bool forward, const TowerPathFn& tp,
                 std::vector<VertexId>& out) {
  const auto& h = reg.at(city);
  std::vector<VertexId> full;
  for (int t : h.children) {
    std::vector<VertexId> p = tp(t);
    if (full.empty()) {
      full = std::move(p);
    } else {
      if (p.size() < 2 || p[0] != full[full.size() - 2] || p[1] != full.back())
        throw WrongGraph("tower paths do not chain through the junction edge");
      full.insert(full.end(), p.begin() + 2, p.end());
    }
  }
  if (!forward) std::reverse(full.begin(), full.end());
  if (out.empty() || out.back() != full.front()) throw WrongGraph("city route starts elsewhere");
  out.insert(out.end(), full.begin() + 1, full.end());
}

namespace {

void detour(const GadgetRegistry& reg, const DetourIndex::Detour& d, const TowerPathFn& tp,
            std::vector<VertexId>& out) {
  if (d.city >= 0) {
    append_city(reg, d.city, d.from_entry, tp, out);
  } else {
    out.push_back(d.middle);
    out.push_back(d.partner);
  }
}

}  // namespace

void append_logical(const GadgetRegistry& reg, const DetourIndex& di,
                    const std::vector<VertexId>& path, bool forward, const TowerPathFn& tp,
                    std::vector<VertexId>& out) {
  std::vector<VertexId> seq = path;
  if (!forward) std::reverse(seq.begin(), seq.end());
  if (out.empty() || out.back() != seq.front()) throw WrongGraph("logical route starts elsewhere");
  for (size_t i = 0; i + 1 < seq.size(); ++i) {
    if (i % 2 == 0) {
      out.push_back(seq[i + 1]);
      continue;
    }
    // Odd segments are bypassed through the partner side.
    const auto& d1 = di.at(seq[i]);
    detour(reg, d1, tp, out);
    VertexId far = di.at(seq[i + 1]).partner;
    out.push_back(far);
    detour(reg, di.at(far), tp, out);
    if (out.back() != seq[i + 1]) throw WrongGraph("XOR detour did not return");
  }
}

void append_forall(const GadgetRegistry& reg, const DetourIndex& di, int forall, Direction d,
                   const std::vector<VertexId>& ladder_path, const TowerPathFn& tp,
                   std::vector<VertexId>& out) {
  const auto& h = reg.at(forall);
  auto X = [&](int i) { return h.role(rname("x", i)); };
  auto cities = children_of_kind(reg, forall, GadgetKind::kCity);
  if (out.empty() || out.back() != h.role("v_out")) throw WrongGraph("forall route starts elsewhere");
  auto ladder = [&](VertexId from, VertexId to) {
    if (ladder_path.size() < 2 || ladder_path.front() != from || ladder_path.back() != to)
      throw WrongGraph("ladder path has wrong endpoints");
    out.insert(out.end(), ladder_path.begin() + 1, ladder_path.end());
  };
  out.push_back(X(1));
  append_city(reg, cities[0], true, tp, out);
  if (d == Direction::kTop)
    ladder(X(2), X(3));
  else
    append_logical(reg, di, h.paths.at("x2x3"), true, tp, out);
  append_city(reg, cities[1], true, tp, out);
  out.push_back(X(5));
  append_city(reg, cities[2], true, tp, out);
  if (d == Direction::kTop)
    append_logical(reg, di, h.paths.at("x6x7"), true, tp, out);
  else
    ladder(X(6), X(7));
  append_city(reg, cities[3], true, tp, out);
  out.push_back(X(9));
  out.push_back(X(10));
  append_logical(reg, di, h.paths.at(d == Direction::kTop ? "x10u" : "x10w"), true, tp, out);
}

EdgeSet edges_of_closed_walk(const Graph& g, const std::vector<VertexId>& walk) {
  std::vector<EdgeId> es;
  es.reserve(walk.size());
  for (size_t i = 0; i < walk.size(); ++i) {
    VertexId u = walk[i], v = walk[(i + 1) % walk.size()];
    auto e = g.find_edge(u, v);
    if (!e) throw WrongGraph("walk step " + g.vertex(u).id + " - " + g.vertex(v).id + " is not an edge");
    es.push_back(*e);
  }
  EdgeSet s = make_edge_set(es);
  if (s.size() != es.size()) throw WrongGraph("walk repeats an edge");
  return s;
}

}  // namespace bpm
