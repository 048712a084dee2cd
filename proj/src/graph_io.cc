#include "bpm/graph_io.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bpm {

using nlohmann::json;

ParseError::ParseError(const std::string& what, int l, int o)
    : Error("parse error at line " + std::to_string(l) + ", offset " + std::to_string(o) + ": " +
            what),
      line(l), offset(o) {}

namespace {

Side side_from_string(const std::string& s) {
  if (s == "L") return Side::kLeft;
  if (s == "R") return Side::kRight;
  return Side::kNone;
}

[[noreturn]] void schema_error(const std::string& what) { throw ParseError(what, 0, 0); }

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(e.what(), line, col);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json graph_to_json(const Graph& g, const GadgetRegistry* registry) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : g.vertices())
    j["vertices"].push_back({{"id", v.id}, {"side", side_name(v.side)}, {"roles", v.roles}});
  j["edges"] = json::array();
  for (const auto& e : g.edges()) j["edges"].push_back({e.u, e.v});
  j["gadgets"] = json::array();
  if (registry) {
    for (const auto& h : registry->all()) {
      json roles = json::object();
      for (const auto& [r, v] : h.roles) roles[r] = v;
      j["gadgets"].push_back({{"kind", kind_name(h.kind)},
                              {"params", h.params},
                              {"role_map", roles},
                              {"paths", h.paths},
                              {"parent", h.parent}});
    }
  }
  return j;
}

std::string export_graph_json(const Graph& g, const GadgetRegistry* registry) {
  return graph_to_json(g, registry).dump(1);
}

ImportedGraph import_graph_json(const std::string& text) {
  json j = parse_json_text(text);
  ImportedGraph out;
  try {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
      schema_error("expected an object with 'vertices' and 'edges'");
    std::vector<VertexSpec> vs;
    for (const auto& jv : j.at("vertices")) {
      VertexSpec s;
      if (jv.is_object()) {
        s.id = jv.value("id", std::to_string(vs.size()));
        s.side = side_from_string(jv.value("side", std::string("-")));
        if (jv.contains("roles")) s.roles = jv.at("roles").get<std::vector<std::string>>();
      } else {
        s.id = jv.is_string() ? jv.get<std::string>() : jv.dump();
      }
      vs.push_back(std::move(s));
    }
    std::vector<std::pair<VertexId, VertexId>> es;
    for (const auto& je : j.at("edges")) {
      if (!je.is_array() || je.size() != 2) schema_error("edge must be a pair");
      es.emplace_back(je[0].get<VertexId>(), je[1].get<VertexId>());
    }
    out.graph = Graph::build(std::move(vs), es);
    if (j.contains("gadgets")) {
      for (const auto& jg : j.at("gadgets")) {
        int id = out.registry.add(kind_from_name(jg.at("kind").get<std::string>()),
                                  jg.value("params", std::map<std::string, int>{}));
        for (const auto& [r, v] : jg.value("role_map", json::object()).items())
          out.registry.at(id).roles[r] = v.get<VertexId>();
        out.registry.at(id).parent = jg.value("parent", -1);
        if (jg.contains("paths"))
          out.registry.at(id).paths =
              jg.at("paths").get<std::map<std::string, std::vector<VertexId>>>();
      }
      for (const auto& h : out.registry.all())
        if (h.parent >= 0) out.registry.at(h.parent).children.push_back(h.id);
    }
  } catch (const json::exception& e) {
    schema_error(e.what());
  }
  return out;
}

std::string export_dot(const Graph& g, const PerfectMatching* m) {
  std::ostringstream os;
  os << "graph G {\n  node [shape=circle];\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    os << "  n" << v << " [label=\"" << g.vertex(v).id << "\"";
    if (g.side(v) == Side::kRight) os << ", style=filled, fillcolor=lightgray";
    os << "];\n";
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    bool bold = m && std::binary_search(m->edges.begin(), m->edges.end(), e);
    os << "  n" << g.edge(e).u << " -- n" << g.edge(e).v;
    if (bold) os << " [style=bold, penwidth=3]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

json matching_to_json(const Graph& g, const PerfectMatching& m) {
  (void)g;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(m.graph_hash));
  return {{"graph_hash", buf}, {"edges", m.edges}};
}

PerfectMatching matching_from_json(const Graph& g, const json& j) {
  try {
    std::string hash = j.at("graph_hash").get<std::string>();
    if (hash != g.hash_hex()) throw MatchingMismatch("matching was saved for another graph");
    return make_matching(g, j.at("edges").get<std::vector<EdgeId>>());
  } catch (const json::exception& e) {
    schema_error(e.what());
  }
}

json flip_sequence_to_json(const Graph& g, const FlipSequence& s) {
  json j = matching_to_json(g, s.start);
  j["start"] = j["edges"];
  j.erase("edges");
  j["cycles"] = s.cycles;
  return j;
}

FlipSequence flip_sequence_from_json(const Graph& g, const json& j) {
  try {
    json start = {{"graph_hash", j.at("graph_hash")}, {"edges", j.at("start")}};
    FlipSequence s;
    s.start = matching_from_json(g, start);
    s.cycles = j.at("cycles").get<std::vector<EdgeSet>>();
    return s;
  } catch (const json::exception& e) {
    schema_error(e.what());
  }
}

}  // namespace bpm
