#include "densestream/directed_density.hpp"

#include <cmath>

namespace densestream {

DirectedEngine::DirectedEngine(NodeId n, const Config& cfg)
    : cfg_(cfg),
      eps_(cfg.epsilon),
      alpha_(cfg.resolved_alpha(Mode::Directed)),
      graph_(n),
      ladder_(directed_ladder(n, eps_, alpha_)) {
  int L = levels_directed(n, eps_);
  size_t grid = ladder_.q.size();
  pairs_.reserve(grid * grid);
  for (size_t a = 0; a < grid; ++a)
    for (size_t b = 0; b < grid; ++b)
      pairs_.push_back(std::make_unique<LevelStructure>(
          2 * n, L, alpha_ * ladder_.q[a], ladder_.q[a],
          alpha_ * ladder_.q[b], ladder_.q[b], n, &ledger_,
          static_cast<int>(a * grid + b), nullptr));
}

void DirectedEngine::apply_edge(NodeId u, NodeId v, bool insert) {
  uint64_t key = arc_key(u, v, graph_.n());
  int32_t slot;
  if (insert) {
    graph_.insert_edge(u, v);
    if (!free_slots_.empty()) {
      slot = free_slots_.back();
      free_slots_.pop_back();
    } else {
      slot = next_slot_++;
    }
    slot_of_[key] = slot;
  } else {
    graph_.delete_edge(u, v);
    auto it = slot_of_.find(key);
    slot = it->second;
    slot_of_.erase(it);
    free_slots_.push_back(slot);
  }
  NodeId su = u, tv = graph_.n() + v;
  for (auto& pair : pairs_) {
    if (insert)
      pair->insert_edge(su, tv, slot);
    else
      pair->delete_edge(slot);
    pair->recover();
  }
}

void DirectedEngine::insert(NodeId u, NodeId v) { apply_edge(u, v, true); }
void DirectedEngine::erase(NodeId u, NodeId v) { apply_edge(u, v, false); }

void DirectedEngine::apply(const UpdateEvent& e) {
  if (e.kind == EventKind::Insert)
    insert(e.u, e.v);
  else if (e.kind == EventKind::Delete)
    erase(e.u, e.v);
}

double DirectedEngine::gamma() const {
  double best = 0;
  size_t grid = ladder_.q.size();
  for (size_t a = 0; a < grid; ++a)
    for (size_t b = 0; b < grid; ++b)
      if (pairs_[index(a, b)]->top_nonempty()) {
        double prod = ladder_.q[a] * ladder_.q[b];
        if (prod > best) best = prod;
      }
  return best;
}

double DirectedEngine::query() const {
  double g = gamma();
  if (g <= 0) return 0.0;
  return std::sqrt(g) / (2 * std::sqrt(1 + eps_));
}

}  // namespace densestream
