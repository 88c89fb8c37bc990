#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "densestream/decomposition.hpp"
#include "densestream/graph.hpp"
#include "densestream/level_structure.hpp"
#include "densestream/params.hpp"
#include "densestream/work_ledger.hpp"

namespace densestream {

// Full-space dynamic estimator: K parallel level structures, one per rung of
// the geometric threshold grid over [1/(4n), 4n]. An update touches every
// rung; a query reads the highest rung whose top level is nonempty and
// reports d_k' / (2 (1+eps)^2).
class FullDynamicEngine {
 public:
  FullDynamicEngine(NodeId n, const Config& cfg);

  void insert(NodeId u, NodeId v);
  void erase(NodeId u, NodeId v);
  void apply(const UpdateEvent& e);

  double query_value() const;
  // Densest of all maintained prefixes across rungs and levels; ties break
  // toward the smaller rung, then the smaller level.
  std::vector<NodeId> query_subgraph() const;

  int k_prime() const;  // 0 when every top level is empty
  NodeId n() const { return graph_.n(); }
  uint64_t m() const { return graph_.m(); }
  const DynamicGraph& graph() const { return graph_; }
  const Config& config() const { return cfg_; }
  double alpha() const { return alpha_; }
  const Ladder& ladder() const { return ladder_; }
  int rungs() const { return ladder_.K; }
  const LevelStructure& rung(int k) const { return *rungs_[k - 1]; }

  WorkLedger& ledger() { return ledger_; }
  const WorkLedger& ledger() const { return ledger_; }
  uint64_t events() const { return events_; }

  // Level changes made while processing the most recent update, for
  // observers (validity audits, tests).
  const std::vector<LevelChange>& last_changes() const { return changes_; }

  Decomposition rung_decomposition(int k) const;

 private:
  void apply_edge(NodeId u, NodeId v, bool insert);
  void refresh_top_bit(int k);

  Config cfg_;
  double alpha_;
  DynamicGraph graph_;
  Ladder ladder_;
  WorkLedger ledger_;
  std::vector<std::unique_ptr<LevelStructure>> rungs_;
  std::vector<uint64_t> top_bits_;  // rung k-1 -> bit
  std::vector<LevelChange> changes_;
  std::unordered_map<uint64_t, int32_t> slot_of_;
  std::vector<int32_t> free_slots_;
  int32_t next_slot_ = 0;
  uint64_t events_ = 0;
};

}  // namespace densestream
