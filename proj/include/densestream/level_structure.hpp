#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "densestream/graph.hpp"
#include "densestream/work_ledger.hpp"

namespace densestream {

struct LevelChange {
  int tag;  // rung index assigned by the owning engine
  NodeId node;
  uint16_t from;
  uint16_t to;
};

// One nested peeling decomposition maintained under edge updates by dirty-node
// recovery. Every node keeps per-level neighbor lists: for i < level(v) the
// list at i holds neighbors at exactly level i; at i = level(v) it holds
// neighbors at level >= i. Equivalently, the edge (u,v) lives at index
// r = min(level(u), level(v)) on both sides, so a level change of y only
// touches y's list at its own level.
//
// A node y at level l is dirty iff (l < L and its list size at l exceeds the
// promote threshold) or (l > 1 and its degree above l-1 falls below the
// demote threshold). recover() drains dirty nodes FIFO until none is left;
// at that point the decomposition is valid for the threshold pair.
//
// Thresholds are per node side: side 0 is [0, side_boundary), side 1 the
// rest. The undirected case uses one side; the directed engine maps the
// out-copies and in-copies of nodes to the two sides.
class LevelStructure {
 public:
  LevelStructure(NodeId n, int L, double promote_above, double demote_below,
                 WorkLedger* ledger = nullptr, int tag = 0,
                 std::vector<LevelChange>* changelog = nullptr);

  // Two-sided thresholds (directed use).
  LevelStructure(NodeId n, int L, double promote_above0, double demote_below0,
                 double promote_above1, double demote_below1,
                 NodeId side_boundary, WorkLedger* ledger = nullptr,
                 int tag = 0, std::vector<LevelChange>* changelog = nullptr);

  // Slot ids are caller-allocated so that engines can share one id space
  // across many structures tracking the same edge set.
  void insert_edge(NodeId u, NodeId v, int32_t slot);
  void delete_edge(int32_t slot);
  void recover();

  // Replaces the thresholds and re-queues every node that is dirty under the
  // new pair; O(n). Used where the threshold grid tracks the edge count.
  void set_thresholds(double promote_above, double demote_below);

  int level(NodeId v) const { return level_[v]; }
  const std::vector<uint16_t>& levels() const { return level_; }
  int L() const { return L_; }
  NodeId n() const { return n_; }

  // |Friends_i[v]| (list size at index i); degree above i-1 is
  // count(v, i-1) + count(v, i) for i = level(v).
  int32_t count(NodeId v, int i) const { return count_[idx(v, i)]; }
  long long degree_above(NodeId v, int i) const;  // #neighbors with level >= i
  long long nodes_at_level(int i) const { return nodes_at_level_[i]; }
  long long edges_at_rmin(int i) const { return edges_at_rmin_[i]; }
  bool top_nonempty() const { return nodes_at_level_[L_] > 0; }

  bool dirty(NodeId v) const;

 private:
  struct Slot {
    NodeId node[2];
    int32_t next[2];
    int32_t prev[2];
    int32_t r;
    bool live = false;
  };

  size_t idx(NodeId v, int i) const {
    return static_cast<size_t>(v) * L_ + (i - 1);
  }
  int side(NodeId v) const { return v >= side_boundary_ ? 1 : 0; }
  void link(int32_t slot, int b, int i);
  void unlink(int32_t slot, int b);
  void move_slot(int32_t slot, int new_r);
  void enqueue_if_dirty(NodeId v);
  void promote(NodeId y);
  void demote(NodeId y);
  void set_level(NodeId v, int to);

  NodeId n_;
  int L_;
  double promote_above_[2];
  double demote_below_[2];
  NodeId side_boundary_;
  WorkLedger* ledger_;
  int tag_;
  std::vector<LevelChange>* changelog_;

  std::vector<uint16_t> level_;
  std::vector<int32_t> head_;   // (v, i) -> encoded slot link or -1
  std::vector<int32_t> count_;  // (v, i) -> list size
  std::vector<Slot> slots_;
  std::vector<long long> nodes_at_level_;  // index 1..L
  std::vector<long long> edges_at_rmin_;   // index 1..L
  std::deque<NodeId> queue_;
  std::vector<char> in_queue_;
};

}  // namespace densestream
