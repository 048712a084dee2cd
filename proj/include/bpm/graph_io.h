// JSON and DOT serialisation for graphs, matchings and flip sequences.

#ifndef BPM_GRAPH_IO_H_
#define BPM_GRAPH_IO_H_

#include <string>

#include "bpm/builder.h"
#include "bpm/graph.h"
#include "bpm/matching.h"
#include "json.hpp"

namespace bpm {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int offset);
  int line;
  int offset;
};

nlohmann::json graph_to_json(const Graph& g, const GadgetRegistry* registry = nullptr);
std::string export_graph_json(const Graph& g, const GadgetRegistry* registry = nullptr);

struct ImportedGraph {
  Graph graph;
  GadgetRegistry registry;
};
ImportedGraph import_graph_json(const std::string& text);

// Matched edges are drawn bold.
std::string export_dot(const Graph& g, const PerfectMatching* m = nullptr);

nlohmann::json matching_to_json(const Graph& g, const PerfectMatching& m);
PerfectMatching matching_from_json(const Graph& g, const nlohmann::json& j);
nlohmann::json flip_sequence_to_json(const Graph& g, const FlipSequence& s);
FlipSequence flip_sequence_from_json(const Graph& g, const nlohmann::json& j);

// Parses text with nlohmann and rethrows failures as ParseError.
nlohmann::json parse_json_text(const std::string& text);
std::string read_file(const std::string& path);

}  // namespace bpm

#endif  // BPM_GRAPH_IO_H_
