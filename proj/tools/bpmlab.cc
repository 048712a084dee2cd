// bpmlab: command-line front end for the perfect matching polytope toolkit.
//
//   bpmlab diam GRAPH.json [--threshold t]
//   bpmlab verify tower|ladder-states|xor|forall|damage|constants [--h n] [--t n]
//   bpmlab reduce gh|folklore|inapprox INPUT [--profile h,t,width] [--out DIR]
//   bpmlab roundtrip INSTANCE.json [--profile h,t,width]
//   bpmlab corpus [--seed s --n N --k K] [--out DIR]
//   bpmlab gallery [--out DIR]
//
// Exit codes: 0 all checks pass, 1 a check answered no, 2 parse or profile
// error, 3 cap or budget exceeded, 4 no perfect matching, 5 lemma failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <variant>

#include "bpm/graph_io.h"
#include "bpm/instances.h"
#include "bpm/lemmas.h"
#include "bpm/oracles.h"
#include "bpm/reduction.h"
#include "bpm/reports.h"
#include "bpm/roundtrip.h"

namespace {

using namespace bpm;
using nlohmann::json;
namespace fs = std::filesystem;

enum Exit { kOk = 0, kNo = 1, kParse = 2, kCap = 3, kNoMatching = 4, kLemma = 5 };

constexpr int kMaxForallLadders = 64;

struct Options {
  RunConfig cfg;
  std::string format = "json";
  std::string lemma, kind, input;
  int h = 3, t = 2, height = 1, width = 1;
  int n = 6, k = 1;
  double density = 0.5;
  bool seeded = false;
};

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw Error("cannot write " + p.string());
  f << text;
}

// Report to stdout or --out, in the requested format.
void emit(const RunConfig& cfg, const json& report, const std::string& dot = "") {
  std::string text;
  if (cfg.format == OutputFormat::kDot && !dot.empty())
    text = dot;
  else if (cfg.format == OutputFormat::kTable)
    text = render_table(report);
  else
    text = report.dump(2) + "\n";
  if (cfg.out.empty())
    std::cout << text;
  else
    write_text(cfg.out, text);
}

int cmd_diam(const Options& o) {
  const RunConfig& cfg = o.cfg;
  ImportedGraph ig = import_graph_json(read_file(o.input));
  DiameterResult d = polytope_diameter(ig.graph, {cfg.cap, cfg.workers});
  bool pass = !cfg.threshold || d.diameter <= *cfg.threshold;
  json r = envelope(cfg, ig.graph.hash_hex(), "no scale profile (input graph)",
                    diameter_json(ig.graph, d, cfg.threshold), pass);
  emit(cfg, r, export_dot(ig.graph, &d.witness_from));
  return pass ? kOk : kNo;
}

void check_budget(size_t estimate, size_t budget) {
  if (estimate > budget) throw BudgetExceeded(estimate);
}

int cmd_verify(const Options& o) {
  const RunConfig& cfg = o.cfg;
  CityScale scale{o.width, o.height};
  json body;
  bool pass = false;
  if (o.lemma == "tower") {
    if (o.h < 1) throw ConfigInvalid("--h must be positive");
    size_t states = enumerate_perfect_matchings(build_tower(o.h).graph, cfg.budget).size();
    check_budget(states * states, cfg.budget);
    auto r = verify_tower(o.h);
    body = tower_json(r);
    pass = r.pass();
  } else if (o.lemma == "ladder-states") {
    auto r = verify_ladder();
    body = ladder_json(r);
    pass = r.pass();
  } else if (o.lemma == "xor") {
    auto a = verify_xor(scale, false), b = verify_xor(scale, true);
    body = {{"lemma", "xor"}, {"same_side", xor_json(a)}, {"mirrored", xor_json(b)}};
    pass = a.pass() && b.pass();
  } else if (o.lemma == "forall" || o.lemma == "damage") {
    if (o.t < 1) throw ConfigInvalid("--t must be positive");
    check_budget(static_cast<size_t>(o.t), kMaxForallLadders);
    auto r = verify_forall(o.t, scale);
    if (o.lemma == "forall") {
      body = forall_json(r);
      pass = r.pass();
    } else {
      body = forall_json(r)["damage"];
      body["lemma"] = "damage";
      body["t"] = o.t;
      body["max_ladders_seen"] = r.max_ladders_seen;
      pass = r.boundary_ok && r.damage_bound <= 4 && r.max_ladders_seen <= 4;
    }
  } else if (o.lemma == "constants") {
    auto e = epsilon_constants();
    auto q = [](const Rational& x) {
      return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
    };
    body = {{"lemma", "constants"},
            {"eps1", q(e.eps1)},
            {"d", e.d},
            {"eps2", q(e.eps2)},
            {"eps", q(e.eps)}};
    pass = e.eps1 == Rational(1, 19) && e.d == 13 && e.eps2 == Rational(1, 16226);
  } else {
    throw ConfigInvalid("unknown lemma '" + o.lemma + "'");
  }
  emit(cfg, envelope(cfg, "", "gadget harness at minimal scale", body, pass));
  return pass ? kOk : kLemma;
}

int reduce_gh(const Options& o) {
  const RunConfig& cfg = o.cfg;
  HamInstance inst = parse_ham_instance(read_file(o.input));
  ScaleProfile p = ScaleProfile::parse(cfg.profile.empty() ? "2,1,1" : cfg.profile);
  p.validate(false);
  GhCensus formula = gh_census_formula(inst, p);
  json body{{"kind", "gh"}, {"n", inst.n()}, {"k", inst.k()},
            {"census_formula", census_json(formula)}};
  std::string hash, dot;
  bool pass = true;
  if (p.kind == ScaleProfile::Kind::kPaper) {
    body["built"] = false;
  } else {
    GhGraph gh = build_GH(inst, p);
    GhCensus built = census(gh);
    hash = gh.graph.hash_hex();
    body["built"] = true;
    body["census"] = census_json(built);
    body["bipartite"] = std::holds_alternative<TwoColoring>(is_bipartite_certificate(gh.graph));
    pass = built.vertices == formula.vertices && built.edges == formula.edges &&
           built.cities == formula.cities && built.v_s == formula.v_s &&
           body["bipartite"].get<bool>();
    dot = export_dot(gh.graph);
    if (!cfg.out.empty()) {
      write_text(fs::path(cfg.out) / "gh.json", export_graph_json(gh.graph, &gh.registry));
      write_text(fs::path(cfg.out) / "gh.dot", dot);
    }
  }
  body["census_matches_formula"] = pass;
  json r = envelope(cfg, hash, p.describe(), body, pass);
  if (!cfg.out.empty()) {
    write_text(fs::path(cfg.out) / "census.json", r.dump(2) + "\n");
    std::cout << (cfg.format == OutputFormat::kTable ? render_table(r) : r.dump(2) + "\n");
  } else {
    emit(cfg, r, dot);
  }
  return pass ? kOk : kLemma;
}

int reduce_folklore(const Options& o) {
  const RunConfig& cfg = o.cfg;
  CnfFormula f = parse_dimacs(read_file(o.input));
  FolkloreGraph fg = build_folklore_hc(f);
  const int64_t m = static_cast<int64_t>(f.clauses.size());
  const int64_t n = fg.graph.num_vertices();
  json body{{"kind", "folklore"},
            {"variables", f.num_vars},
            {"clauses", m},
            {"vertices", n},
            {"edges", fg.graph.num_edges()},
            {"vertex_formula", folklore_vertex_count(f)},
            {"xors", fg.registry.of_kind(GadgetKind::kXor).size()},
            {"bound_60m_plus_3", 60 * m + 3},
            {"within_bound", n <= 60 * m + 3}};
  bool pass = n == folklore_vertex_count(f);
  std::string dot = export_dot(fg.graph);
  if (!cfg.out.empty()) {
    write_text(fs::path(cfg.out) / "folklore.json", export_graph_json(fg.graph, &fg.registry));
    write_text(fs::path(cfg.out) / "folklore.dot", dot);
  }
  json r = envelope(cfg, fg.graph.hash_hex(), "no scale profile (fixed-size gadgets)", body, pass);
  if (!cfg.out.empty()) {
    write_text(fs::path(cfg.out) / "census.json", r.dump(2) + "\n");
    std::cout << (cfg.format == OutputFormat::kTable ? render_table(r) : r.dump(2) + "\n");
  } else {
    emit(cfg, r, dot);
  }
  return pass ? kOk : kLemma;
}

int reduce_inapprox(const Options& o) {
  const RunConfig& cfg = o.cfg;
  ImportedGraph h = import_graph_json(read_file(o.input));
  CityScale scale;
  std::string statement;
  if (cfg.profile.rfind("paper", 0) == 0) {
    // This scale is fixed by n; "paper:N" must agree with it.
    if (cfg.profile != "paper" && cfg.profile != "paper:" + std::to_string(h.graph.num_vertices()))
      throw ProfileMismatch("paper profile must name n = " + std::to_string(h.graph.num_vertices()));
    scale = inapprox_paper_scale(h.graph.num_vertices());
    statement = "paper profile (census only)";
  } else {
    ScaleProfile p = ScaleProfile::parse(cfg.profile.empty() ? "2,1,1" : cfg.profile);
    p.validate(false);
    scale = p.city();
    statement = "desk profile (h_c=" + std::to_string(scale.height) + ", t_c=" +
                std::to_string(scale.width) + "; scaled down, no hardness guarantee)";
  }
  InapproxGraph g = build_inapprox_G(h.graph, scale);
  json body{{"kind", "inapprox"},
            {"n", h.graph.num_vertices()},
            {"cities", g.city.size()},
            {"crossing_edges", 2 * h.graph.num_edges()},
            {"vertices", g.graph.num_vertices()},
            {"edges", g.graph.num_edges()}};
  bool pass = true;
  auto ham = ham_cycle_undirected(h.graph);
  body["hamiltonian"] = ham.has_value();
  if (ham) {
    FlipSequence seq = synthesize_inapprox_sequence(g, inapprox_locked_matching(g),
                                                    inapprox_default_matching(g), *ham);
    ValidationReport vr = validate_flip_sequence(g.graph, seq);
    int good = 0;
    for (const auto& c : seq.cycles)
      if (extract_walk(g, c).w1() == h.graph.num_vertices()) ++good;
    body["sequence_length"] = seq.length();
    body["expected_length"] = 2 * scale.height;
    body["valid"] = vr.ok;
    body["zero_good_walks"] = good;
    pass = vr.ok && seq.length() == 2 * scale.height && good == seq.length();
  }
  std::string dot = export_dot(g.graph);
  if (!cfg.out.empty()) {
    write_text(fs::path(cfg.out) / "inapprox.json", export_graph_json(g.graph, &g.registry));
    write_text(fs::path(cfg.out) / "inapprox.dot", dot);
  }
  json r = envelope(cfg, g.graph.hash_hex(), statement, body, pass);
  if (!cfg.out.empty()) {
    write_text(fs::path(cfg.out) / "census.json", r.dump(2) + "\n");
    std::cout << (cfg.format == OutputFormat::kTable ? render_table(r) : r.dump(2) + "\n");
  } else {
    emit(cfg, r, dot);
  }
  return pass ? kOk : kLemma;
}

int cmd_reduce(const Options& o) {
  if (o.kind == "gh") return reduce_gh(o);
  if (o.kind == "folklore") return reduce_folklore(o);
  if (o.kind == "inapprox") return reduce_inapprox(o);
  throw ConfigInvalid("unknown reduction '" + o.kind + "'");
}

int cmd_roundtrip(const Options& o) {
  const RunConfig& cfg = o.cfg;
  HamInstance inst = parse_ham_instance(read_file(o.input));
  ScaleProfile p = ScaleProfile::parse(cfg.profile.empty() ? "2,1,1" : cfg.profile);
  if (p.kind == ScaleProfile::Kind::kPaper)
    throw ProfileMismatch("round trip needs a desk profile");
  RoundTripReport rep = run_roundtrip(inst, p);
  emit(cfg, envelope(cfg, rep.graph_hash, p.describe(), roundtrip_json(rep), rep.pass()));
  return rep.pass() ? kOk : kLemma;
}

int cmd_corpus(const Options& o) {
  const RunConfig& cfg = o.cfg;
  std::vector<CorpusEntry> entries;
  if (o.seeded) {
    entries.push_back({"random-n" + std::to_string(o.n) + "-k" + std::to_string(o.k) + "-s" +
                           std::to_string(cfg.seed),
                       random_ham_instance(cfg.seed, o.n, o.k, o.density), false});
    entries.back().expected_yes = forall_exists_decision(entries.back().instance).yes;
  } else {
    entries = desk_corpus();
  }
  json list = json::array();
  for (const auto& e : entries) {
    json inst = json::parse(ham_instance_to_json(e.instance));
    list.push_back({{"name", e.name}, {"yes", e.expected_yes}, {"instance", inst}});
    if (!cfg.out.empty()) write_text(fs::path(cfg.out) / (e.name + ".json"), inst.dump(1) + "\n");
  }
  json r = envelope(cfg, "", o.seeded ? "random instance" : "fixed desk corpus",
                    {{"instances", list}}, true);
  if (cfg.out.empty()) emit(cfg, r);
  else std::cout << "wrote " << entries.size() << " instances to " << cfg.out << "\n";
  return kOk;
}

int cmd_gallery(const Options& o) {
  const RunConfig& cfg = o.cfg;
  json list = json::array();
  for (const auto& ng : test_graph_gallery()) {
    list.push_back({{"name", ng.name},
                    {"vertices", ng.graph.num_vertices()},
                    {"edges", ng.graph.num_edges()},
                    {"hash", ng.graph.hash_hex()}});
    if (!cfg.out.empty())
      write_text(fs::path(cfg.out) / (ng.name + ".json"), export_graph_json(ng.graph) + "\n");
  }
  json r = envelope(cfg, "", "no scale profile (test graphs)", {{"graphs", list}}, true);
  if (cfg.out.empty()) emit(cfg, r);
  else std::cout << "wrote " << list.size() << " graphs to " << cfg.out << "\n";
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Perfect matching polytope toolkit"};
  app.require_subcommand(1);
  Options o;
  std::optional<int> threshold;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--cap", o.cfg.cap, "perfect matching cap");
    sub->add_option("--budget", o.cfg.budget, "exhaustive search budget");
    sub->add_option("--format", o.format, "json, table or dot");
    sub->add_option("--out", o.cfg.out, "output file (directory for reduce, corpus, gallery)");
    sub->add_option("--workers", o.cfg.workers, "worker threads");
  };

  auto* diam = app.add_subcommand("diam", "diameter of the perfect matching polytope");
  diam->add_option("graph", o.input, "graph JSON")->required();
  diam->add_option("--threshold", threshold, "decide diam <= t");
  common(diam);

  auto* verify = app.add_subcommand("verify", "exhaustive gadget lemma check");
  verify->set_help_flag("--help", "print this help message and exit");  // frees --h
  verify->add_option("lemma", o.lemma, "tower, ladder-states, xor, forall, damage, constants")
      ->required();
  verify->add_option("--h", o.h, "tower height");
  verify->add_option("--t", o.t, "ladders in the forall gadget");
  verify->add_option("--city-height", o.height, "city tower height inside harnesses");
  verify->add_option("--city-width", o.width, "towers per city inside harnesses");
  common(verify);

  auto* reduce = app.add_subcommand("reduce", "build a reduction graph and its census");
  reduce->add_option("kind", o.kind, "gh, folklore or inapprox")->required();
  reduce->add_option("input", o.input, "instance JSON, DIMACS CNF or graph JSON")->required();
  reduce->add_option("--profile", o.cfg.profile, "h,t,width or paper:N");
  common(reduce);

  auto* roundtrip = app.add_subcommand("roundtrip", "end-to-end reduction check");
  roundtrip->add_option("instance", o.input, "instance JSON")->required();
  roundtrip->add_option("--profile", o.cfg.profile, "h,t,width");
  common(roundtrip);

  auto* corpus = app.add_subcommand("corpus", "emit the desk corpus or a seeded instance");
  auto* seed_opt = corpus->add_option("--seed", o.cfg.seed, "random instance seed");
  corpus->add_option("--n", o.n, "vertices of the random instance");
  corpus->add_option("--k", o.k, "pairs of the random instance");
  corpus->add_option("--density", o.density, "arc probability");
  common(corpus);

  auto* gallery = app.add_subcommand("gallery", "emit the small test graphs");
  common(gallery);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  o.cfg.command = app.get_subcommands().front()->get_name();
  if (!o.input.empty()) o.cfg.inputs = {o.input};
  if (!o.lemma.empty()) o.cfg.inputs = {o.lemma};
  if (!o.kind.empty()) o.cfg.inputs.insert(o.cfg.inputs.begin(), o.kind);
  o.cfg.threshold = threshold;
  o.seeded = seed_opt->count() > 0;

  try {
    o.cfg.format = format_from_name(o.format);
    o.cfg.validate();
    if (diam->parsed()) return cmd_diam(o);
    if (verify->parsed()) return cmd_verify(o);
    if (reduce->parsed()) return cmd_reduce(o);
    if (roundtrip->parsed()) return cmd_roundtrip(o);
    if (corpus->parsed()) return cmd_corpus(o);
    return cmd_gallery(o);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const InfeasibleScale& e) {
    std::cerr << "infeasible scale: " << e.what() << "\n";
    return kCap;
  } catch (const TooManyPairs& e) {
    std::cerr << "too many pairs: " << e.what() << "\n";
    return kCap;
  } catch (const NoPerfectMatching& e) {
    std::cerr << e.what() << "\n";
    return kNoMatching;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ConfigInvalid& e) {
    std::cerr << "bad option: " << e.what() << "\n";
    return kParse;
  } catch (const ProfileInvalid& e) {
    std::cerr << "bad profile: " << e.what() << "\n";
    return kParse;
  } catch (const ProfileMismatch& e) {
    std::cerr << "profile mismatch: " << e.what() << "\n";
    return kParse;
  } catch (const InstanceInvalid& e) {
    std::cerr << "bad instance: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLemma;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
