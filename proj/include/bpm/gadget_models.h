// Towers and ladders studied in isolation.
//
// Each model embeds one gadget in a small harness graph whose extra edges
// close every path through the gadget into a cycle. A flip is well-behaved
// when its cycle runs through exactly one of the closures; searching over
// harness matchings with only those flips reproduces how a large cycle can
// act on the gadget.

#ifndef BPM_GADGET_MODELS_H_
#define BPM_GADGET_MODELS_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bpm/gadgets.h"
#include "bpm/matching.h"

namespace bpm {

struct WellBehavedStep {
  EdgeSet cycle;  // harness edge set
  Direction direction = Direction::kNone;
};

class HarnessModel {
 public:
  virtual ~HarnessModel() = default;
  const BipartiteGraph& graph() const { return graph_; }
  VertexId role(const std::string& r) const { return roles_.at(r); }
  const std::map<std::string, VertexId>& roles() const { return roles_; }

  // kNone unless the cycle passes through exactly one closure.
  virtual Direction direction(const EdgeSet& cycle) const = 0;
  // Well-behaved flips available from m, in enumeration order.
  std::vector<WellBehavedStep> moves(const PerfectMatching& m) const;
  // The gadget part of a well-behaved cycle as a vertex path, oriented from
  // the entry of its direction (v, a_6 or a_0) to the exit.
  std::vector<VertexId> gadget_path(const WellBehavedStep& s) const;
  // Harness matching corresponding to the gadget's restriction of a matching
  // of a host graph, given the host handle with the same role names.
  PerfectMatching local_state(const Graph& host, const GadgetHandle& h,
                              const PerfectMatching& m) const;
  // Inverse of local_state on the gadget's own edges: host vertex path.
  std::vector<VertexId> to_host(const GadgetHandle& h, const std::vector<VertexId>& path) const;

 protected:
  BipartiteGraph graph_;
  std::map<std::string, VertexId> roles_;
  std::vector<std::string> gadget_roles_;  // roles that also exist on the host
  // Closures: (entry role, exit role, harness edges). The closure is "closed"
  // (inner edge matched) when its endpoints are matched inside the gadget.
  struct Closure {
    std::string from, to;
    Direction dir;
    std::vector<VertexId> path;  // harness path from `from` to `to`
  };
  std::vector<Closure> closures_;
  void finish(GraphBuilder& b);
};

class TowerModel : public HarnessModel {
 public:
  explicit TowerModel(int h);
  int height() const { return h_; }
  Direction direction(const EdgeSet& cycle) const override;
  PerfectMatching default_state() const;
  PerfectMatching locked_state() const;
  std::vector<PerfectMatching> semi_default_states() const;
  bool semi_default(const PerfectMatching& m) const;
  std::vector<int> horizontals(const PerfectMatching& m) const;

 private:
  int h_;
  EdgeId closure_ = -1;
};

class LadderModel : public HarnessModel {
 public:
  LadderModel();
  Direction direction(const EdgeSet& cycle) const override;
  PerfectMatching state(StateLabel label) const;  // Default, TopOpen or BottomOpen
  // The eight semi-default ladder states in a fixed order.
  std::vector<PerfectMatching> semi_default_states() const;
  bool semi_default(const PerfectMatching& m) const;
  std::vector<int> horizontals(const PerfectMatching& m) const;
  StateLabel label(const PerfectMatching& m) const;

 private:
  PerfectMatching from_inner(const std::vector<std::pair<std::string, std::string>>& inner) const;
};

struct MinWellBehaved {
  int length = -1;  // -1 when unreachable
  std::vector<WellBehavedStep> witness;
  std::set<std::string> direction_strings;  // over every shortest sequence
};
// Exact minimum number of well-behaved flips from `from` to `to`.
MinWellBehaved min_well_behaved_sequence(const HarnessModel& model, const PerfectMatching& from,
                                         const PerfectMatching& to, bool all_directions = false);

// Semi-default ladder states joined when two flips from the same side carry
// one into the other. labels[i][j] bit 1 = "2t", bit 2 = "2b".
struct LadderTransferGraph {
  std::vector<PerfectMatching> states;
  std::vector<std::vector<int>> labels;
  std::map<std::pair<int, int>, std::vector<WellBehavedStep>> top_witness, bottom_witness;
  int diameter = 0;
};
LadderTransferGraph ladder_transfer_graph(const LadderModel& model);

struct LadderPlan {
  std::vector<WellBehavedStep> steps;  // exactly four
  std::string directions;              // e.g. "ttbb"
};
// Four well-behaved flips taking one semi-default state to another, in two
// same-direction pairs; short plans are padded with an idle pair C, C.
LadderPlan ladder_transfer_plan(const LadderModel& model, const LadderTransferGraph& tg,
                                const PerfectMatching& from, const PerfectMatching& to);

// Exactly 2h well-behaved tower flips between semi-default states: a
// shortest sequence padded by idle pairs. Results are memoised.
class TowerPlanner {
 public:
  explicit TowerPlanner(int h) : model_(h) {}
  const TowerModel& model() const { return model_; }
  std::vector<WellBehavedStep> plan(const PerfectMatching& from, const PerfectMatching& to);

 private:
  TowerModel model_;
  std::map<std::pair<EdgeSet, EdgeSet>, std::vector<WellBehavedStep>> memo_;
};

}  // namespace bpm

#endif  // BPM_GADGET_MODELS_H_
