#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "densestream/graph.hpp"
#include "densestream/level_structure.hpp"
#include "densestream/params.hpp"
#include "densestream/work_ledger.hpp"

namespace densestream {

// Dynamic directed-density estimator over the bipartite view of the graph:
// every node has an out-copy (side 0, ids [0,n)) and an in-copy (side 1, ids
// [n,2n)); the directed edge (u,v) becomes the pair edge (u, n+v). For every
// pair of grid values (q_a, q_b) a two-sided level structure is maintained,
// out-copies judged against q_a and in-copies against q_b. The estimate is
// sqrt(gamma) / (2 sqrt(1+eps)) with gamma the largest q_a*q_b among pairs
// whose top level is inhabited.
class DirectedEngine {
 public:
  DirectedEngine(NodeId n, const Config& cfg);

  void insert(NodeId u, NodeId v);
  void erase(NodeId u, NodeId v);
  void apply(const UpdateEvent& e);

  double query() const;
  double gamma() const;

  NodeId n() const { return graph_.n(); }
  uint64_t m() const { return graph_.m(); }
  const DirectedDynamicGraph& graph() const { return graph_; }
  double alpha() const { return alpha_; }
  double epsilon() const { return eps_; }
  int grid_size() const { return static_cast<int>(ladder_.q.size()); }
  double q(int k) const { return ladder_.q[k]; }  // k in [0, K]
  const LevelStructure& pair_structure(int a, int b) const {
    return *pairs_[index(a, b)];
  }
  const WorkLedger& ledger() const { return ledger_; }

 private:
  size_t index(int a, int b) const {
    return static_cast<size_t>(a) * ladder_.q.size() + b;
  }
  void apply_edge(NodeId u, NodeId v, bool insert);

  Config cfg_;
  double eps_;
  double alpha_;
  DirectedDynamicGraph graph_;
  DirectedLadder ladder_;
  WorkLedger ledger_;
  std::vector<std::unique_ptr<LevelStructure>> pairs_;
  std::unordered_map<uint64_t, int32_t> slot_of_;
  std::vector<int32_t> free_slots_;
  int32_t next_slot_ = 0;
};

}  // namespace densestream
