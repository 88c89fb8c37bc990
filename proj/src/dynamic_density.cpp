#include "densestream/dynamic_density.hpp"

#include <algorithm>
#include <cassert>

namespace densestream {

FullDynamicEngine::FullDynamicEngine(NodeId n, const Config& cfg)
    : cfg_(cfg),
      alpha_(cfg.resolved_alpha(Mode::Full)),
      graph_(n),
      ladder_(full_ladder(n, cfg.epsilon)) {
  // Grid floor sits below any realizable density: d_1 = 1/(4n) < 1/(alpha*n)
  // as long as alpha < 4, which the 2+3eps default respects for eps < 2/3.
  assert(alpha_ * ladder_.base < 1.0 / n || n == 0);
  int L = levels_undirected(n, cfg.epsilon);
  rungs_.reserve(ladder_.K);
  for (int k = 1; k <= ladder_.K; ++k) {
    double d = ladder_.d(k);
    rungs_.push_back(std::make_unique<LevelStructure>(
        n, L, alpha_ * d, d, &ledger_, k, &changes_));
  }
  top_bits_.assign((ladder_.K + 64) / 64, 0);
}

void FullDynamicEngine::refresh_top_bit(int k) {
  uint64_t bit = uint64_t(1) << ((k - 1) % 64);
  if (rungs_[k - 1]->top_nonempty())
    top_bits_[(k - 1) / 64] |= bit;
  else
    top_bits_[(k - 1) / 64] &= ~bit;
}

void FullDynamicEngine::apply_edge(NodeId u, NodeId v, bool insert) {
  changes_.clear();
  int32_t slot;
  uint64_t key = edge_key(u, v, graph_.n());
  if (insert) {
    graph_.insert_edge(u, v);  // validates preconditions
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
  size_t mark = 0;
  for (int k = 1; k <= ladder_.K; ++k) {
    auto& rung = *rungs_[k - 1];
    if (insert)
      rung.insert_edge(u, v, slot);
    else
      rung.delete_edge(slot);
    ledger_.add(1);
    rung.recover();
    // Only transitions through the top level can change the rung's bit.
    bool touched_top = false;
    for (size_t i = mark; i < changes_.size(); ++i)
      if (changes_[i].from == rung.L() || changes_[i].to == rung.L())
        touched_top = true;
    if (touched_top) refresh_top_bit(k);
    mark = changes_.size();
  }
  ++events_;
  ledger_.close_event(events_);
}

void FullDynamicEngine::insert(NodeId u, NodeId v) { apply_edge(u, v, true); }
void FullDynamicEngine::erase(NodeId u, NodeId v) { apply_edge(u, v, false); }

void FullDynamicEngine::apply(const UpdateEvent& e) {
  if (e.kind == EventKind::Insert)
    insert(e.u, e.v);
  else if (e.kind == EventKind::Delete)
    erase(e.u, e.v);
}

int FullDynamicEngine::k_prime() const {
  for (int w = static_cast<int>(top_bits_.size()) - 1; w >= 0; --w) {
    if (top_bits_[w] == 0) continue;
    int bit = 63 - __builtin_clzll(top_bits_[w]);
    return w * 64 + bit + 1;
  }
  return 0;
}

double FullDynamicEngine::query_value() const {
  int k = k_prime();
  if (k == 0) return 0.0;
  double e = cfg_.epsilon;
  return ladder_.d(k) / (2 * (1 + e) * (1 + e));
}

std::vector<NodeId> FullDynamicEngine::query_subgraph() const {
  Rational best(0);
  int best_k = 0, best_j = 0;
  for (int k = 1; k <= ladder_.K; ++k) {
    const auto& rung = *rungs_[k - 1];
    long long esuf = 0, nsuf = 0;
    // Suffix sums over levels give |E(Z_j)| and |Z_j|.
    std::vector<Rational> density(rung.L() + 1, Rational(0));
    for (int j = rung.L(); j >= 1; --j) {
      esuf += rung.edges_at_rmin(j);
      nsuf += rung.nodes_at_level(j);
      density[j] = nsuf ? Rational(esuf, nsuf) : Rational(0);
    }
    for (int j = 1; j <= rung.L() - 1; ++j)
      if (density[j] > best) {
        best = density[j];
        best_k = k;
        best_j = j;
      }
  }
  std::vector<NodeId> out;
  if (best_k == 0) return out;
  const auto& rung = *rungs_[best_k - 1];
  for (NodeId v = 0; v < rung.n(); ++v)
    if (rung.level(v) >= best_j) out.push_back(v);
  return out;
}

Decomposition FullDynamicEngine::rung_decomposition(int k) const {
  const auto& rung = *rungs_[k - 1];
  Decomposition dec;
  dec.level = rung.levels();
  dec.L = rung.L();
  dec.alpha = alpha_;
  dec.d = ladder_.d(k);
  return dec;
}

}  // namespace densestream
