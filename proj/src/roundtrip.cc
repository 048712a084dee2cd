#include "bpm/roundtrip.h"

#include <variant>

#include "bpm/gadgets.h"

namespace bpm {

bool PatternRun::ok(int expected_length) const {
  if (!oracle_has_cycle) return !synthesized && provider_failed && *provider_failed == pattern;
  return synthesized && valid && length == expected_length && irregular == 0 &&
         extracted_ok == length && every_city_every_cycle;
}

bool RoundTripReport::pass() const {
  bool census_ok = built.vertices == formula.vertices && built.edges == formula.edges &&
                   built.cities == formula.cities && built.v_s == formula.v_s;
  if (!census_ok || !bipartite || !default_valid) return false;
  if (runs.empty()) return false;
  for (const auto& r : runs) {
    if (!r.ok(expected_length)) return false;
    if (r.projection_flips + default_projection_flips + r.irregular > irregular_bound) return false;
  }
  return true;
}

RoundTripReport run_roundtrip(const HamInstance& inst, const ScaleProfile& profile, int max_pairs) {
  if (inst.k() > max_pairs) throw TooManyPairs("round trip runs every pattern; k is too large");
  profile.validate(true);
  RoundTripReport rep;
  rep.profile = profile;
  GhGraph gh = build_GH(inst, profile);
  const Graph& g = gh.graph;
  rep.graph_hash = g.hash_hex();
  rep.built = census(gh);
  rep.formula = gh_census_formula(inst, profile);
  rep.bipartite = std::holds_alternative<TwoColoring>(is_bipartite_certificate(g));
  rep.expected_length = static_cast<int>(2 * profile.city_height);
  rep.irregular_bound = 2 * (inst.n() + 22 * inst.k());

  PerfectMatching m_def = default_matching(gh);
  rep.default_valid = is_perfect_matching(g, m_def.edges);
  Projection def_proj = semi_default_projection(gh, m_def);
  rep.default_projection_flips = def_proj.sequence.length();

  ForallExistsResult decision = forall_exists_decision(inst, max_pairs);
  rep.oracle_yes = decision.yes;
  rep.oracle_refuting = decision.refuting;
  HamProvider provider = oracle_provider(inst);
  auto cities = gh.registry.of_kind(GadgetKind::kCity);

  for (const auto& w : decision.table) {
    PatternRun run;
    run.pattern = w.pattern;
    run.oracle_has_cycle = w.cycle.has_value();
    try {
      PerfectMatching m_p = pattern_matching(gh, w.pattern);
      Projection proj = semi_default_projection(gh, m_p);
      run.projection_flips = proj.sequence.length();
      Synthesis s = synthesize_flip_sequence(gh, proj.result, def_proj.result, provider);
      run.synthesized = true;
      run.length = s.sequence.length();
      ValidationReport vr = validate_flip_sequence(g, s.sequence);
      run.valid = vr.ok && vr.final_matching == def_proj.result;
      RegularityCensus rc = regularity_census(g, gh.registry, s.sequence);
      run.regular = rc.regular;
      run.irregular = rc.irregular;
      run.every_city_every_cycle = !cities.empty();
      for (int v : rc.city_visits)
        if (v != run.length) run.every_city_every_cycle = false;
      for (int c = 0; c < run.length; ++c) {
        Extraction ex = extract_ham_cycle(gh, s.sequence.cycles[c]);
        const Pattern& step = s.patterns[c / 2];
        if (ex.pattern == step && is_ham_cycle(inst.graph, ex.route) &&
            respects_pattern(inst, ex.route, step))
          ++run.extracted_ok;
      }
    } catch (const HamProviderFailed& e) {
      run.provider_failed = e.pattern;
      run.error = e.what();
    } catch (const Error& e) {
      run.error = e.what();
    }
    rep.runs.push_back(std::move(run));
  }
  return rep;
}

}  // namespace bpm
