#include "densestream/streaming_oneshot.hpp"

#include <algorithm>
#include <cmath>

#include "densestream/hash_family.hpp"
#include "densestream/rng.hpp"

namespace densestream {

OneshotEngine::OneshotEngine(NodeId n, const Config& cfg)
    : n_(n), cfg_(cfg), params_(oneshot_params(n, cfg)) {}

void OneshotEngine::ingest(const UpdateEvent& e) {
  if (e.kind == EventKind::Query) return;
  uint64_t key = edge_key(e.u, e.v, n_);
  if (e.kind == EventKind::Insert) {
    if (e.u == e.v) throw SelfLoopError(e.u);
    if (pos_.count(key)) throw DuplicateInsertError(e.u, e.v);
    pos_[key] = static_cast<uint32_t>(support_.size());
    support_.push_back(key);
    ++m_;
  } else {
    auto it = pos_.find(key);
    if (it == pos_.end()) throw MissingDeleteError(e.u, e.v);
    uint32_t i = it->second;
    pos_.erase(it);
    if (i + 1 != support_.size()) {
      support_[i] = support_.back();
      pos_[support_[i]] = i;
    }
    support_.pop_back();
    --m_;
  }
}

OneshotEngine::Result OneshotEngine::finalize() const {
  Result res;
  res.bank_capacity = cfg_.bank_capacity > 0
                          ? cfg_.bank_capacity
                          : params_.lambda_star * params_.K_star;
  if (m_ == 0) return res;

  double eps = cfg_.epsilon;
  double alpha = params_.alpha;
  int L = params_.L;
  double pi = static_cast<double>(m_) / (2 * alpha * n_);
  double sigma = 2 * (1 + eps) * n_;
  int K = 2 + ceil_log(sigma / pi, 1 + eps);
  res.rungs = K;

  double theta = theta_unit(n_, cfg_);
  double select_at = (1 - eps) * alpha * theta;

  // Per-rung, per-level group sizes; the whole plan must fit in the bank.
  std::vector<long long> group(K + 1, 0);
  long long draws = 0;
  for (int k = 1; k <= K; ++k) {
    double dk = pi * std::pow(1 + eps, k - 1);
    group[k] = static_cast<long long>(std::ceil(theta * m_ / dk));
    draws += group[k] * (L - 1);
  }
  res.draws = draws;
  if (draws > res.bank_capacity)
    throw InsufficientSamples(
        "sample plan needs " + std::to_string(draws) + " draws, bank holds " +
        std::to_string(res.bank_capacity) + "; increase scale or c");

  // Sorted support makes the estimate a function of the edge set alone, not
  // of stream order.
  std::vector<uint64_t> sorted(support_);
  std::sort(sorted.begin(), sorted.end());

  std::vector<char> in_z(n_, 1);
  std::vector<double> deg(n_, 0);
  std::vector<NodeId> touched;
  int k_prime = 0;
  for (int k = 1; k <= K; ++k) {
    std::fill(in_z.begin(), in_z.end(), 1);
    bool alive = true;
    for (int i = 1; i <= L - 1 && alive; ++i) {
      touched.clear();
      Rng rng(cfg_.seed, mix64(0x05e7, k, i));
      for (long long j = 0; j < group[k]; ++j) {
        uint64_t key = sorted[rng.below(sorted.size())];
        auto [u, v] = edge_from_key(key, n_);
        if (in_z[u] && in_z[v]) {
          if (deg[u] == 0) touched.push_back(u);
          if (deg[v] == 0) touched.push_back(v);
          deg[u] += 1;
          deg[v] += 1;
        }
      }
      alive = false;
      for (NodeId v = 0; v < n_; ++v) {
        if (in_z[v] && deg[v] >= select_at)
          alive = true;
        else
          in_z[v] = 0;
      }
      for (NodeId v : touched) deg[v] = 0;
    }
    if (alive) k_prime = k;  // survivors reached the top level
  }
  res.k_prime = k_prime;
  if (k_prime > 0) {
    double dk = pi * std::pow(1 + eps, k_prime - 1);
    res.estimate = dk / (2 * (1 + eps) * (1 + eps));
  }
  return res;
}

}  // namespace densestream
