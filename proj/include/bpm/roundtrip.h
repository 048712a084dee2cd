// End-to-end check of the forall-exists reduction on one instance: build
// G_H, project the pattern matchings, synthesize regular flip sequences with
// the oracle as Hamiltonian-cycle provider and read every cycle back as a
// Hamiltonian cycle of H.

#ifndef BPM_ROUNDTRIP_H_
#define BPM_ROUNDTRIP_H_

#include <optional>
#include <string>
#include <vector>

#include "bpm/reduction.h"

namespace bpm {

// One synthesis attempt starting from the projection of M_P.
struct PatternRun {
  Pattern pattern;
  bool oracle_has_cycle = false;
  bool synthesized = false;
  std::optional<Pattern> provider_failed;  // pattern carried by HamProviderFailed
  int projection_flips = 0;                // M_P to its projection
  int length = 0;
  bool valid = false;           // validates and ends at the projected M_def
  int regular = 0, irregular = 0;  // synthesized cycles only
  int extracted_ok = 0;         // cycles read back as pattern-respecting Hamiltonian cycles
  bool every_city_every_cycle = false;
  std::string error;
  bool ok(int expected_length) const;
};

struct RoundTripReport {
  ScaleProfile profile;
  std::string graph_hash;
  GhCensus built, formula;
  bool bipartite = false;
  bool default_valid = false;
  int default_projection_flips = 0;
  bool oracle_yes = false;
  std::optional<Pattern> oracle_refuting;
  int expected_length = 0;     // 2 h_c
  int irregular_bound = 0;     // 2 (n + 22k)
  std::vector<PatternRun> runs;
  // Census, matchings and every run agree with the oracle; projection
  // cycles count as irregular against irregular_bound.
  bool pass() const;
};

// Runs every pattern (k <= max_pairs). On a no-instance the runs whose
// pattern has no cycle must fail with that pattern.
RoundTripReport run_roundtrip(const HamInstance& inst, const ScaleProfile& profile,
                              int max_pairs = 4);

}  // namespace bpm

#endif  // BPM_ROUNDTRIP_H_
