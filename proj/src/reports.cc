#include "bpm/reports.h"

#include <sstream>

namespace bpm {

using nlohmann::json;

OutputFormat format_from_name(const std::string& s) {
  if (s == "json") return OutputFormat::kJson;
  if (s == "table") return OutputFormat::kTable;
  if (s == "dot") return OutputFormat::kDot;
  throw ConfigInvalid("unknown format '" + s + "' (json, table or dot)");
}

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::kJson: return "json";
    case OutputFormat::kTable: return "table";
    case OutputFormat::kDot: return "dot";
  }
  return "?";
}

void RunConfig::validate() const {
  if (cap == 0) throw ConfigInvalid("--cap must be positive");
  if (budget == 0) throw ConfigInvalid("--budget must be positive");
  if (workers < 1) throw ConfigInvalid("--workers must be positive");
  if (threshold && *threshold < 0) throw ConfigInvalid("--threshold must be non-negative");
}

json RunConfig::to_json() const {
  json j{{"command", command}, {"inputs", inputs},   {"cap", cap},
         {"budget", budget},   {"format", format_name(format)}, {"seed", seed},
         {"workers", workers}};
  j["profile"] = profile.empty() ? json(nullptr) : json(profile);
  j["threshold"] = threshold ? json(*threshold) : json(nullptr);
  j["out"] = out.empty() ? json("stdout") : json(out);
  return j;
}

json envelope(const RunConfig& cfg, const std::string& graph_hash,
              const std::string& profile_statement, json body, bool pass) {
  json j;
  j["config"] = cfg.to_json();
  j["graph_hash"] = graph_hash.empty() ? json(nullptr) : json(graph_hash);
  j["profile"] = profile_statement;
  j["pass"] = pass;
  j["result"] = std::move(body);
  return j;
}

json census_json(const GhCensus& c) {
  return {{"vertices", c.vertices}, {"edges", c.edges},     {"cities", c.cities},
          {"towers", c.towers},     {"xors", c.xors},       {"foralls", c.foralls},
          {"ladders", c.ladders},   {"v_s", c.v_s}};
}

namespace {

json edge_list(const Graph& g, const EdgeSet& es) {
  json a = json::array();
  for (EdgeId e : es) a.push_back({g.vertex(g.edge(e).u).id, g.vertex(g.edge(e).v).id});
  return a;
}

json opt_cycle(const std::optional<std::vector<VertexId>>& c) {
  return c ? json(*c) : json(nullptr);
}

}  // namespace

json diameter_json(const Graph& g, const DiameterResult& d, std::optional<int> threshold) {
  json j{{"diameter", d.diameter},
         {"circuit_diameter", d.circuit_diameter},
         {"perfect_matchings", d.num_matchings},
         {"witness_from", edge_list(g, d.witness_from.edges)},
         {"witness_to", edge_list(g, d.witness_to.edges)}};
  json flips = json::array();
  for (const auto& c : d.witness.cycles) flips.push_back(edge_list(g, c));
  j["witness_flips"] = flips;
  if (threshold) {
    j["threshold"] = *threshold;
    j["decision"] = d.diameter <= *threshold ? "yes" : "no";
  }
  return j;
}

json tower_json(const TowerLemmaReport& r) {
  return {{"lemma", "tower"},
          {"h", r.h},
          {"min_locked_to_default", r.min_locked_to_default},
          {"bound", 2 * r.h - 2},
          {"states_explored", r.states_explored},
          {"flips_explored", r.flips_explored},
          {"flips_h_unchanged", r.flips_h_unchanged},
          {"flips_h_one", r.flips_h_one},
          {"horizontal_violations", r.horizontal_violations},
          {"semi_default_states", r.semi_default_states},
          {"pairs_checked", r.pairs_checked},
          {"pairs_valid", r.pairs_valid},
          {"pass", r.pass()}};
}

json ladder_json(const LadderLemmaReport& r) {
  return {{"lemma", "ladder-states"},
          {"semi_default_states", r.semi_default_states},
          {"transfer_diameter", r.transfer_diameter},
          {"labels_ok", r.labels_ok},
          {"min_bottom_to_default", r.min_bottom_to_default},
          {"bottom_directions", r.bottom_directions},
          {"min_top_to_default", r.min_top_to_default},
          {"top_directions", r.top_directions},
          {"plans_checked", r.plans_checked},
          {"plans_valid", r.plans_valid},
          {"pass", r.pass()}};
}

json xor_json(const XorLemmaReport& r) {
  return {{"lemma", "xor"},
          {"city_scale", {{"height", r.scale.height}, {"width", r.scale.width}}},
          {"bipartite", r.bipartite},
          {"cycles", r.cycles},
          {"regular", r.regular},
          {"violations", r.violations},
          {"counterexample", opt_cycle(r.counterexample)},
          {"pass", r.pass()}};
}

json forall_json(const ForallLemmaReport& r) {
  return {{"lemma", "forall"},
          {"t", r.t},
          {"city_scale", {{"height", r.scale.height}, {"width", r.scale.width}}},
          {"bipartite", r.bipartite},
          {"regular", r.regular},
          {"top", r.top},
          {"bottom", r.bottom},
          {"violations", r.violations},
          {"max_ladders_seen", r.max_ladders_seen},
          {"counterexample", opt_cycle(r.counterexample)},
          {"counterexample_reason", r.counterexample_reason},
          {"damage",
           {{"boundary_ok", r.boundary_ok},
            {"shared_ports", r.shared_ports},
            {"min_port_edges", r.min_port_edges},
            {"port_capacity", r.port_capacity},
            {"bound", r.damage_bound}}},
          {"pass", r.pass()}};
}

json roundtrip_json(const RoundTripReport& r) {
  json runs = json::array();
  for (const auto& x : r.runs) {
    json j{{"pattern", x.pattern.str()},
           {"oracle_has_cycle", x.oracle_has_cycle},
           {"synthesized", x.synthesized},
           {"projection_flips", x.projection_flips},
           {"length", x.length},
           {"valid", x.valid},
           {"regular", x.regular},
           {"irregular", x.irregular},
           {"extracted_ok", x.extracted_ok},
           {"every_city_every_cycle", x.every_city_every_cycle},
           {"ok", x.ok(r.expected_length)}};
    j["provider_failed"] = x.provider_failed ? json(x.provider_failed->str()) : json(nullptr);
    if (!x.error.empty()) j["error"] = x.error;
    runs.push_back(std::move(j));
  }
  return {{"census", census_json(r.built)},
          {"census_formula", census_json(r.formula)},
          {"bipartite", r.bipartite},
          {"default_valid", r.default_valid},
          {"default_projection_flips", r.default_projection_flips},
          {"oracle", r.oracle_yes ? "yes" : "no"},
          {"oracle_refuting", r.oracle_refuting ? json(r.oracle_refuting->str()) : json(nullptr)},
          {"expected_length", r.expected_length},
          {"irregular_bound", r.irregular_bound},
          {"runs", runs},
          {"pass", r.pass()}};
}

namespace {

void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  auto scalar_array = [](const json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !scalar_array(j)) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string render_table(const json& j) {
  std::ostringstream os;
  flatten(j, "", os);
  return os.str();
}

}  // namespace bpm
