#pragma once

#include <vector>

#include "densestream/graph.hpp"
#include "densestream/level_structure.hpp"

namespace densestream {

// Independent incremental validity checker for one maintained decomposition.
// It derives, from the raw adjacency and the level assignment alone, each
// node's degree above its own level (c_own) and above the level below
// (c_below); validity of the whole decomposition is equivalent to
//   no v has (level < L and c_own > alpha*d) or (level > 1 and c_below < d).
//
// Fixed mode keeps a running violation counter for a pinned threshold pair.
// Histogram mode keeps counts of (c_own, c_below) values so the violation
// count can be queried for thresholds that move between steps.
class DecompositionAudit {
 public:
  enum class Mode { Fixed, Histogram };

  DecompositionAudit(const DynamicGraph* g, int L, Mode mode,
                     double promote_above = 0, double demote_below = 0);

  // Feed the true edge diff (after the graph object is already updated).
  void on_edge(NodeId u, NodeId v, bool inserted);
  // Feed one level change, in the order the engine performed them.
  void on_level_change(NodeId v, int from, int to);

  long long violations() const;  // Fixed mode
  long long violations(double promote_above, double demote_below) const;

  int level(NodeId v) const { return level_[v]; }

 private:
  void add_own(NodeId v, int delta);
  void add_below(NodeId v, int delta);
  void track(NodeId v, int delta);  // +1 register, -1 unregister

  const DynamicGraph* g_;
  int L_;
  Mode mode_;
  double hi_, lo_;
  std::vector<uint16_t> level_;
  std::vector<int32_t> c_own_, c_below_;
  long long violation_count_ = 0;
  std::vector<long long> hist_own_, hist_below_;
};

}  // namespace densestream
