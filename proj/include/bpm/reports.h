// Run configuration and report rendering for the command-line front end.
// Every report is a JSON object carrying the config, the hash of the graph it
// talks about and a statement of which scale profile was used.

#ifndef BPM_REPORTS_H_
#define BPM_REPORTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpm/lemmas.h"
#include "bpm/matching.h"
#include "bpm/reduction.h"
#include "bpm/roundtrip.h"
#include "json.hpp"

namespace bpm {

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { kJson, kTable, kDot };
OutputFormat format_from_name(const std::string& s);  // throws ConfigInvalid
const char* format_name(OutputFormat f);

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string profile;  // as given, "" when the command takes none
  size_t cap = kDefaultMatchingCap;
  size_t budget = kDefaultStateBudget;
  OutputFormat format = OutputFormat::kJson;
  uint64_t seed = 0;
  int workers = 1;
  std::optional<int> threshold;
  std::string out;  // "" is stdout

  void validate() const;  // throws ConfigInvalid
  nlohmann::json to_json() const;
};

// Wraps a body with config, graph hash and profile statement.
nlohmann::json envelope(const RunConfig& cfg, const std::string& graph_hash,
                        const std::string& profile_statement, nlohmann::json body, bool pass);

nlohmann::json census_json(const GhCensus& c);
nlohmann::json diameter_json(const Graph& g, const DiameterResult& d, std::optional<int> threshold);
nlohmann::json tower_json(const TowerLemmaReport& r);
nlohmann::json ladder_json(const LadderLemmaReport& r);
nlohmann::json xor_json(const XorLemmaReport& r);
nlohmann::json forall_json(const ForallLemmaReport& r);
nlohmann::json roundtrip_json(const RoundTripReport& r);

// "key.sub: value" lines, arrays of scalars inline.
std::string render_table(const nlohmann::json& j);

}  // namespace bpm

#endif  // BPM_REPORTS_H_
