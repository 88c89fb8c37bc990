#include "densestream/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "densestream/hash_family.hpp"
#include "densestream/rng.hpp"

namespace densestream::gen {

namespace {

// Edge set with O(1) uniform pick of a present edge.
class EdgePool {
 public:
  explicit EdgePool(NodeId n) : n_(n) {}

  bool has(NodeId u, NodeId v) const {
    return pos_.count(edge_key(u, v, n_)) > 0;
  }
  size_t size() const { return keys_.size(); }

  void add(NodeId u, NodeId v) {
    uint64_t k = edge_key(u, v, n_);
    pos_[k] = static_cast<uint32_t>(keys_.size());
    keys_.push_back(k);
  }

  void remove(NodeId u, NodeId v) {
    uint64_t k = edge_key(u, v, n_);
    auto it = pos_.find(k);
    uint32_t i = it->second;
    pos_.erase(it);
    if (i + 1 != keys_.size()) {
      keys_[i] = keys_.back();
      pos_[keys_[i]] = i;
    }
    keys_.pop_back();
  }

  std::pair<NodeId, NodeId> pick(Rng& rng) const {
    uint64_t k = keys_[rng.below(keys_.size())];
    auto [u, v] = edge_from_key(k, n_);
    return {u, v};
  }

 private:
  NodeId n_;
  std::vector<uint64_t> keys_;
  std::unordered_map<uint64_t, uint32_t> pos_;
};

std::pair<NodeId, NodeId> random_absent_edge(const EdgePool& pool, NodeId n,
                                             Rng& rng) {
  for (;;) {
    NodeId u = static_cast<NodeId>(rng.below(n));
    NodeId v = static_cast<NodeId>(rng.below(n));
    if (u == v) continue;
    if (!pool.has(u, v)) return {u < v ? u : v, u < v ? v : u};
  }
}

void maybe_checkpoint(StreamFile& s, int every, long long idx) {
  if (every > 0 && (idx + 1) % every == 0)
    s.events.push_back(UpdateEvent::query());
}

}  // namespace

StreamFile clique_buildup(int k) {
  StreamFile s;
  s.n = static_cast<NodeId>(k);
  for (NodeId u = 0; u < s.n; ++u)
    for (NodeId v = u + 1; v < s.n; ++v)
      s.events.push_back(UpdateEvent::insert(u, v));
  s.events.push_back(UpdateEvent::query());
  return s;
}

StreamFile planted_clique(const GenParams& p) {
  StreamFile s;
  s.n = p.n;
  Rng rng(p.seed, 0x9a7e);
  // Random clique support, then clique + background edges in shuffled order.
  std::vector<NodeId> nodes(p.n);
  for (NodeId v = 0; v < p.n; ++v) nodes[v] = v;
  for (NodeId v = p.n; v > 1; --v)
    std::swap(nodes[v - 1], nodes[rng.below(v)]);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<char> in_clique(p.n, 0);
  for (int i = 0; i < p.clique && i < static_cast<int>(p.n); ++i)
    in_clique[nodes[i]] = 1;
  for (NodeId u = 0; u < p.n; ++u)
    for (NodeId v = u + 1; v < p.n; ++v) {
      if (in_clique[u] && in_clique[v])
        edges.emplace_back(u, v);
      else if (rng.chance(p.p))
        edges.emplace_back(u, v);
    }
  for (size_t i = edges.size(); i > 1; --i)
    std::swap(edges[i - 1], edges[rng.below(i)]);
  for (size_t i = 0; i < edges.size(); ++i) {
    s.events.push_back(UpdateEvent::insert(edges[i].first, edges[i].second));
    maybe_checkpoint(s, p.checkpoint_every, static_cast<long long>(i));
  }
  s.events.push_back(UpdateEvent::query());
  return s;
}

StreamFile erdos_renyi_dynamic(const GenParams& p) {
  StreamFile s;
  s.n = p.n;
  Rng rng(p.seed, 0xe8d0);
  EdgePool pool(p.n);
  long long target = p.target_m > 0
                         ? p.target_m
                         : static_cast<long long>(p.p * p.n * (p.n - 1) / 2);
  long long max_m = static_cast<long long>(p.n) * (p.n - 1) / 2;
  target = std::min(target, max_m);
  for (long long i = 0; i < p.steps; ++i) {
    // Drift toward the target size, with churn around it.
    bool insert;
    if (pool.size() == 0)
      insert = true;
    else if (static_cast<long long>(pool.size()) >= max_m)
      insert = false;
    else {
      double bias = 0.5 + 0.35 * (1.0 - static_cast<double>(pool.size()) /
                                            std::max<long long>(target, 1));
      insert = rng.chance(std::clamp(bias, 0.05, 0.95));
    }
    if (insert) {
      auto [u, v] = random_absent_edge(pool, p.n, rng);
      pool.add(u, v);
      s.events.push_back(UpdateEvent::insert(u, v));
    } else {
      auto [u, v] = pool.pick(rng);
      pool.remove(u, v);
      s.events.push_back(UpdateEvent::remove(u, v));
    }
    maybe_checkpoint(s, p.checkpoint_every, i);
  }
  s.events.push_back(UpdateEvent::query());
  return s;
}

StreamFile churn(const GenParams& p) {
  StreamFile s;
  s.n = p.n;
  Rng rng(p.seed, 0xc4a9);
  EdgePool pool(p.n);
  long long target = p.target_m > 0 ? p.target_m : 4ll * p.n;
  long long max_m = static_cast<long long>(p.n) * (p.n - 1) / 2;
  target = std::min(target, max_m);
  for (long long i = 0; i < p.steps; ++i) {
    bool insert;
    if (pool.size() == 0)
      insert = true;
    else if (static_cast<long long>(pool.size()) >= max_m)
      insert = false;
    else if (static_cast<long long>(pool.size()) < target)
      insert = rng.chance(0.75);
    else
      insert = rng.chance(0.25);
    if (insert) {
      auto [u, v] = random_absent_edge(pool, p.n, rng);
      pool.add(u, v);
      s.events.push_back(UpdateEvent::insert(u, v));
    } else {
      auto [u, v] = pool.pick(rng);
      pool.remove(u, v);
      s.events.push_back(UpdateEvent::remove(u, v));
    }
    maybe_checkpoint(s, p.checkpoint_every, i);
  }
  s.events.push_back(UpdateEvent::query());
  return s;
}

StreamFile generate(const std::string& kind, const GenParams& params) {
  if (kind == "clique-buildup") return clique_buildup(params.clique);
  if (kind == "planted-clique") return planted_clique(params);
  if (kind == "erdos-renyi-dynamic") return erdos_renyi_dynamic(params);
  if (kind == "churn") return churn(params);
  throw std::invalid_argument("unknown generator kind: " + kind);
}

}  // namespace densestream::gen
