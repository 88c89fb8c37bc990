#include "densestream/level_structure.hpp"

#include <algorithm>
#include <cassert>

namespace densestream {

LevelStructure::LevelStructure(NodeId n, int L, double promote_above,
                               double demote_below, WorkLedger* ledger,
                               int tag, std::vector<LevelChange>* changelog)
    : LevelStructure(n, L, promote_above, demote_below, promote_above,
                     demote_below, n, ledger, tag, changelog) {}

LevelStructure::LevelStructure(NodeId n, int L, double promote_above0,
                               double demote_below0, double promote_above1,
                               double demote_below1, NodeId side_boundary,
                               WorkLedger* ledger, int tag,
                               std::vector<LevelChange>* changelog)
    : n_(n),
      L_(L),
      promote_above_{promote_above0, promote_above1},
      demote_below_{demote_below0, demote_below1},
      side_boundary_(side_boundary),
      ledger_(ledger),
      tag_(tag),
      changelog_(changelog),
      level_(n, 1),
      head_(static_cast<size_t>(n) * L, -1),
      count_(static_cast<size_t>(n) * L, 0),
      nodes_at_level_(L + 1, 0),
      edges_at_rmin_(L + 1, 0),
      in_queue_(n, 0) {
  nodes_at_level_[1] = n;
}

long long LevelStructure::degree_above(NodeId v, int i) const {
  // Valid for i <= level(v): lists at i..level(v) partition those neighbors.
  long long total = 0;
  for (int j = i; j <= level_[v]; ++j) total += count_[idx(v, j)];
  return total;
}

bool LevelStructure::dirty(NodeId v) const {
  int l = level_[v];
  int s = side(v);
  if (l < L_ && count_[idx(v, l)] > promote_above_[s]) return true;
  if (l > 1 &&
      count_[idx(v, l - 1)] + count_[idx(v, l)] < demote_below_[s])
    return true;
  return false;
}

void LevelStructure::enqueue_if_dirty(NodeId v) {
  if (!in_queue_[v] && dirty(v)) {
    in_queue_[v] = 1;
    queue_.push_back(v);
  }
}

void LevelStructure::link(int32_t slot, int b, int i) {
  Slot& s = slots_[slot];
  NodeId v = s.node[b];
  int32_t& h = head_[idx(v, i)];
  s.prev[b] = -1;
  s.next[b] = h;
  if (h != -1) slots_[h >> 1].prev[h & 1] = slot * 2 + b;
  h = slot * 2 + b;
  ++count_[idx(v, i)];
}

void LevelStructure::unlink(int32_t slot, int b) {
  Slot& s = slots_[slot];
  NodeId v = s.node[b];
  int i = s.r;
  if (s.prev[b] == -1)
    head_[idx(v, i)] = s.next[b];
  else
    slots_[s.prev[b] >> 1].next[s.prev[b] & 1] = s.next[b];
  if (s.next[b] != -1) slots_[s.next[b] >> 1].prev[s.next[b] & 1] = s.prev[b];
  --count_[idx(v, i)];
}

void LevelStructure::move_slot(int32_t slot, int new_r) {
  Slot& s = slots_[slot];
  --edges_at_rmin_[s.r];
  unlink(slot, 0);
  unlink(slot, 1);
  s.r = new_r;
  link(slot, 0, new_r);
  link(slot, 1, new_r);
  ++edges_at_rmin_[new_r];
}

void LevelStructure::insert_edge(NodeId u, NodeId v, int32_t slot) {
  if (slot >= static_cast<int32_t>(slots_.size()))
    slots_.resize(slot + 1);
  Slot& s = slots_[slot];
  assert(!s.live);
  s.node[0] = u;
  s.node[1] = v;
  s.live = true;
  s.r = std::min(level_[u], level_[v]);
  link(slot, 0, s.r);
  link(slot, 1, s.r);
  ++edges_at_rmin_[s.r];
  if (ledger_) ledger_->add(1);
  enqueue_if_dirty(u);
  enqueue_if_dirty(v);
}

void LevelStructure::delete_edge(int32_t slot) {
  Slot& s = slots_[slot];
  assert(s.live);
  NodeId u = s.node[0], v = s.node[1];
  --edges_at_rmin_[s.r];
  unlink(slot, 0);
  unlink(slot, 1);
  s.live = false;
  if (ledger_) ledger_->add(1);
  enqueue_if_dirty(u);
  enqueue_if_dirty(v);
}

void LevelStructure::set_level(NodeId v, int to) {
  int from = level_[v];
  --nodes_at_level_[from];
  ++nodes_at_level_[to];
  level_[v] = static_cast<uint16_t>(to);
  if (changelog_)
    changelog_->push_back({tag_, v, static_cast<uint16_t>(from),
                           static_cast<uint16_t>(to)});
}

void LevelStructure::promote(NodeId y) {
  int i = level_[y];
  uint64_t work = 1;
  // Neighbors in the list at i all have level >= i; those strictly above
  // move with y to index i+1, the rest stay at i.
  int32_t cur = head_[idx(y, i)];
  while (cur != -1) {
    int32_t slot = cur >> 1;
    int b = cur & 1;
    Slot& s = slots_[slot];
    cur = s.next[b];
    NodeId x = s.node[b ^ 1];
    ++work;
    if (level_[x] > i) {
      move_slot(slot, i + 1);
      enqueue_if_dirty(x);
    }
  }
  set_level(y, i + 1);
  if (ledger_) ledger_->add(work);
  enqueue_if_dirty(y);
}

void LevelStructure::demote(NodeId y) {
  int i = level_[y];
  uint64_t work = 1;
  int32_t cur = head_[idx(y, i)];
  while (cur != -1) {
    int32_t slot = cur >> 1;
    int b = cur & 1;
    Slot& s = slots_[slot];
    cur = s.next[b];
    NodeId x = s.node[b ^ 1];
    ++work;
    move_slot(slot, i - 1);
    enqueue_if_dirty(x);
  }
  set_level(y, i - 1);
  if (ledger_) ledger_->add(work);
  enqueue_if_dirty(y);
}

void LevelStructure::set_thresholds(double promote_above,
                                    double demote_below) {
  promote_above_[0] = promote_above_[1] = promote_above;
  demote_below_[0] = demote_below_[1] = demote_below;
  for (NodeId v = 0; v < n_; ++v) enqueue_if_dirty(v);
  if (ledger_) ledger_->add(n_);
}

void LevelStructure::recover() {
  while (!queue_.empty()) {
    NodeId y = queue_.front();
    queue_.pop_front();
    in_queue_[y] = 0;
    int l = level_[y];
    int s = side(y);
    if (l < L_ && count_[idx(y, l)] > promote_above_[s])
      promote(y);
    else if (l > 1 &&
             count_[idx(y, l - 1)] + count_[idx(y, l)] < demote_below_[s])
      demote(y);
  }
}

}  // namespace densestream
