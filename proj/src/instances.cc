#include "bpm/instances.h"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "bpm/graph_io.h"

namespace bpm {

using nlohmann::json;

int HamInstance::pair_of(int v) const {
  for (int i = 0; i < k(); ++i)
    if (designated(i) == v) return i;
  return -1;
}

void HamInstance::validate() const {
  std::set<int> seen_v, seen_arc;
  for (int i = 0; i < k(); ++i) {
    auto [e, f] = pairs[i];
    if (e < 0 || e >= graph.num_arcs() || f < 0 || f >= graph.num_arcs())
      throw InstanceInvalid("pair " + std::to_string(i + 1) + " names a missing arc");
    if (e == f) throw InstanceInvalid("pair " + std::to_string(i + 1) + " repeats an arc");
    if (graph.arc(e).first != graph.arc(f).first)
      throw InstanceInvalid("arcs of pair " + std::to_string(i + 1) + " leave different vertices");
    const int v = graph.arc(e).first;
    if (graph.out_arcs(v).size() != 2)
      throw InstanceInvalid("designated vertex " + std::to_string(v) +
                            " must have exactly two outgoing arcs");
    if (!seen_v.insert(v).second)
      throw InstanceInvalid("vertex " + std::to_string(v) + " is designated twice");
    if (!seen_arc.insert(e).second || !seen_arc.insert(f).second)
      throw InstanceInvalid("an arc appears in two pairs");
  }
}

HamInstance parse_ham_instance(const std::string& text) {
  json j = parse_json_text(text);
  HamInstance inst;
  try {
    std::vector<std::pair<int, int>> arcs = j.at("arcs").get<std::vector<std::pair<int, int>>>();
    int n = 0;
    for (auto [u, v] : arcs) n = std::max({n, u + 1, v + 1});
    n = j.value("n", n);
    inst.graph = DirectedGraph(n, std::move(arcs));
    if (j.contains("pairs")) inst.pairs = j.at("pairs").get<std::vector<std::pair<int, int>>>();
  } catch (const json::exception& e) {
    throw ParseError(e.what(), 0, 0);
  }
  inst.validate();
  return inst;
}

std::string ham_instance_to_json(const HamInstance& inst) {
  json j;
  j["n"] = inst.n();
  j["arcs"] = inst.graph.arcs();
  j["pairs"] = inst.pairs;
  return j.dump();
}

std::string Pattern::str() const {
  if (picks_e.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < picks_e.size(); ++i) {
    if (i) s += ' ';
    s += (picks_e[i] ? "e" : "~e") + std::to_string(i + 1);
  }
  return s;
}

Pattern pattern_from_index(int k, uint64_t bits) {
  Pattern p;
  for (int i = 0; i < k; ++i) p.picks_e.push_back((bits >> i) & 1);
  return p;
}

void check_pattern(const HamInstance& inst, const Pattern& p) {
  if (static_cast<int>(p.picks_e.size()) != inst.k())
    throw PatternInvalid("pattern has " + std::to_string(p.picks_e.size()) + " choices for " +
                         std::to_string(inst.k()) + " pairs");
}

std::vector<int> pattern_arcs(const HamInstance& inst, const Pattern& p) {
  check_pattern(inst, p);
  std::vector<int> out;
  for (int i = 0; i < inst.k(); ++i)
    out.push_back(p.picks_e[i] ? inst.pairs[i].first : inst.pairs[i].second);
  return out;
}

void CnfFormula::validate() const {
  if (num_vars < 0) throw InstanceInvalid("negative variable count");
  for (size_t j = 0; j < clauses.size(); ++j) {
    if (clauses[j].empty()) throw InstanceInvalid("clause " + std::to_string(j + 1) + " is empty");
    for (int l : clauses[j])
      if (l == 0 || std::abs(l) > num_vars)
        throw InstanceInvalid("clause " + std::to_string(j + 1) + " has literal " +
                              std::to_string(l) + " outside the declared variables");
  }
}

CnfFormula parse_dimacs(const std::string& text) {
  CnfFormula f;
  int declared = -1;
  std::vector<int> cur;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    char c = line[start];
    if (c == 'c') continue;
    if (c == '%') break;
    if (c == 'p') {
      std::istringstream ls(line.substr(start + 1));
      std::string fmt;
      if (!(ls >> fmt >> f.num_vars >> declared) || fmt != "cnf" || f.num_vars < 0 || declared < 0)
        throw ParseError("malformed problem line", lineno, static_cast<int>(start) + 1);
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before the problem line", lineno, static_cast<int>(start) + 1);
    size_t pos = start;
    while (pos < line.size()) {
      size_t b = line.find_first_not_of(" \t\r", pos);
      if (b == std::string::npos) break;
      size_t e = line.find_first_of(" \t\r", b);
      if (e == std::string::npos) e = line.size();
      std::string tok = line.substr(b, e - b);
      int lit = 0;
      try {
        size_t used = 0;
        lit = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("bad literal '" + tok + "'", lineno, static_cast<int>(b) + 1);
      }
      if (std::abs(lit) > f.num_vars)
        throw ParseError("literal " + tok + " exceeds the declared variable count", lineno,
                         static_cast<int>(b) + 1);
      if (lit == 0) {
        if (cur.empty()) throw ParseError("empty clause", lineno, static_cast<int>(b) + 1);
        f.clauses.push_back(std::move(cur));
        cur.clear();
      } else {
        cur.push_back(lit);
      }
      pos = e;
    }
  }
  if (!header) throw ParseError("missing problem line", lineno, 0);
  if (!cur.empty()) f.clauses.push_back(std::move(cur));
  if (static_cast<int>(f.clauses.size()) != declared)
    throw ParseError("problem line declares " + std::to_string(declared) + " clauses, found " +
                         std::to_string(f.clauses.size()),
                     lineno, 0);
  return f;
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int l : c) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

CnfFormula random_cnf(uint64_t seed, int num_vars, int num_clauses, int max_width) {
  std::mt19937_64 rng(seed);
  CnfFormula f;
  f.num_vars = num_vars;
  max_width = std::min(max_width, num_vars);
  for (int j = 0; j < num_clauses; ++j) {
    int width = std::uniform_int_distribution<int>(1, max_width)(rng);
    std::vector<int> vars(num_vars);
    for (int i = 0; i < num_vars; ++i) vars[i] = i + 1;
    std::shuffle(vars.begin(), vars.end(), rng);
    std::vector<int> clause;
    for (int i = 0; i < width; ++i) clause.push_back(rng() & 1 ? vars[i] : -vars[i]);
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

HamInstance random_ham_instance(uint64_t seed, int n, int k, double density) {
  if (k > n) throw InstanceInvalid("more designated vertices than vertices");
  if (n < 3) throw InstanceInvalid("need at least three vertices");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<int, int>> arcs;
  std::vector<std::pair<int, int>> pair_targets;
  for (int v = 0; v < n; ++v) {
    if (v < k) {
      std::vector<int> others;
      for (int x = 0; x < n; ++x)
        if (x != v) others.push_back(x);
      std::shuffle(others.begin(), others.end(), rng);
      pair_targets.emplace_back(static_cast<int>(arcs.size()), static_cast<int>(arcs.size()) + 1);
      arcs.emplace_back(v, others[0]);
      arcs.emplace_back(v, others[1]);
    } else {
      for (int x = 0; x < n; ++x)
        if (x != v && coin(rng)) arcs.emplace_back(v, x);
    }
  }
  HamInstance inst;
  inst.graph = DirectedGraph(n, std::move(arcs));
  inst.pairs = std::move(pair_targets);
  inst.validate();
  return inst;
}

namespace {

std::vector<VertexSpec> two_sided(int left, int right) {
  std::vector<VertexSpec> vs;
  for (int i = 0; i < left; ++i) vs.push_back({"l" + std::to_string(i), Side::kLeft, {}});
  for (int i = 0; i < right; ++i) vs.push_back({"r" + std::to_string(i), Side::kRight, {}});
  return vs;
}

}  // namespace

BipartiteGraph even_cycle(int length) {
  if (length < 4 || length % 2) throw InstanceInvalid("cycle length must be even and >= 4");
  int h = length / 2;
  std::vector<std::pair<VertexId, VertexId>> es;
  for (int i = 0; i < h; ++i) {
    es.emplace_back(i, h + i);
    es.emplace_back(h + i, (i + 1) % h);
  }
  return BipartiteGraph::build(two_sided(h, h), es);
}

BipartiteGraph complete_bipartite(int a, int b) {
  std::vector<std::pair<VertexId, VertexId>> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) es.emplace_back(i, a + j);
  return BipartiteGraph::build(two_sided(a, b), es);
}

BipartiteGraph disjoint_union(const BipartiteGraph& a, const BipartiteGraph& b) {
  std::vector<VertexSpec> vs;
  for (const auto& v : a.vertices()) vs.push_back({"a." + v.id, v.side, v.roles});
  for (const auto& v : b.vertices()) vs.push_back({"b." + v.id, v.side, v.roles});
  std::vector<std::pair<VertexId, VertexId>> es;
  for (const auto& e : a.edges()) es.emplace_back(e.u, e.v);
  int off = a.num_vertices();
  for (const auto& e : b.edges()) es.emplace_back(off + e.u, off + e.v);
  return BipartiteGraph::build(std::move(vs), es);
}

BipartiteGraph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InstanceInvalid("grid needs positive dimensions");
  std::vector<VertexSpec> vs;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      vs.push_back({"g" + std::to_string(r) + "_" + std::to_string(c),
                    (r + c) % 2 ? Side::kRight : Side::kLeft, {}});
  std::vector<std::pair<VertexId, VertexId>> es;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) es.emplace_back(v, v + 1);
      if (r + 1 < rows) es.emplace_back(v, v + cols);
    }
  return BipartiteGraph::build(std::move(vs), es);
}

BipartiteGraph random_bipartite(uint64_t seed, int half, double p) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<VertexId, VertexId>> es;
  for (int i = 0; i < half; ++i)
    for (int j = 0; j < half; ++j)
      if (i == j || coin(rng)) es.emplace_back(i, half + j);
  return BipartiteGraph::build(two_sided(half, half), es);
}

std::vector<NamedGraph> test_graph_gallery() {
  std::vector<NamedGraph> out;
  out.push_back({"C4", even_cycle(4)});
  out.push_back({"C6", even_cycle(6)});
  out.push_back({"C8", even_cycle(8)});
  out.push_back({"K33", complete_bipartite(3, 3)});
  out.push_back({"K44", complete_bipartite(4, 4)});
  out.push_back({"two-C4", disjoint_union(even_cycle(4), even_cycle(4))});
  out.push_back({"three-C4", disjoint_union(disjoint_union(even_cycle(4), even_cycle(4)),
                                            even_cycle(4))});
  out.push_back({"grid2x4", grid_graph(2, 4)});
  out.push_back({"grid4x4", grid_graph(4, 4)});
  out.push_back({"grid3x6", grid_graph(3, 6)});
  for (uint64_t seed = 1; seed <= 6; ++seed)
    out.push_back({"random6-s" + std::to_string(seed), random_bipartite(seed, 6, 0.45)});
  for (uint64_t seed = 1; seed <= 4; ++seed)
    out.push_back({"random10-s" + std::to_string(seed), random_bipartite(seed, 10, 0.25)});
  return out;
}

HamInstance near_complete_instance(int n, const std::vector<std::pair<int, int>>& targets) {
  std::vector<std::pair<int, int>> arcs;
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < n; ++v) {
    if (v < static_cast<int>(targets.size())) {
      int a = static_cast<int>(arcs.size());
      pairs.emplace_back(a, a + 1);
      arcs.emplace_back(v, targets[v].first);
      arcs.emplace_back(v, targets[v].second);
      continue;
    }
    for (int x = 0; x < n; ++x)
      if (x != v) arcs.emplace_back(v, x);
  }
  HamInstance inst;
  inst.graph = DirectedGraph(n, std::move(arcs));
  inst.pairs = std::move(pairs);
  inst.validate();
  return inst;
}

std::vector<CorpusEntry> desk_corpus() {
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, HamInstance inst, bool yes) {
    out.push_back({std::move(name), std::move(inst), yes});
  };
  add("complete4-k0", near_complete_instance(4, {}), true);
  add("complete4-k1", near_complete_instance(4, {{1, 2}}), true);
  add("complete5-k2", near_complete_instance(5, {{2, 3}, {4, 0}}), true);
  for (auto [n, seed] : {std::pair{5, 1}, {5, 5}, {6, 2}, {6, 10}})
    add("random" + std::to_string(n) + "-k1-s" + std::to_string(seed),
        random_ham_instance(seed, n, 1, 0.5), true);

  // Vertex 3 can only be entered from 0, so picking 0 -> 1 strands it.
  HamInstance blocked = near_complete_instance(4, {{1, 3}});
  {
    std::vector<std::pair<int, int>> arcs;
    std::vector<int> remap(blocked.graph.num_arcs(), -1);
    for (int a = 0; a < blocked.graph.num_arcs(); ++a) {
      auto arc = blocked.graph.arc(a);
      if (arc.second == 3 && arc.first != 0) continue;
      remap[a] = static_cast<int>(arcs.size());
      arcs.push_back(arc);
    }
    blocked.graph = DirectedGraph(4, std::move(arcs));
    blocked.pairs = {{remap[0], remap[1]}};
    blocked.validate();
  }
  add("blocked4-k1", std::move(blocked), false);
  for (auto [n, k, seed] : {std::tuple{5, 1, 2}, {6, 1, 3}, {5, 2, 5}, {6, 2, 2}})
    add("random" + std::to_string(n) + "-k" + std::to_string(k) + "-s" + std::to_string(seed),
        random_ham_instance(seed, n, k, 0.5), false);
  return out;
}

}  // namespace bpm
