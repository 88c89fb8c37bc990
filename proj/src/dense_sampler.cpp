#include "densestream/dense_sampler.hpp"

#include <cassert>

namespace densestream {

DenseSampler::DenseSampler(NodeId n, long long s, uint64_t seed,
                           SamplerVariant variant, HashMode hash_mode,
                           int sketch_subs)
    : s_(s < 1 ? 1 : s),
      seed_(seed),
      variant_(variant),
      levels_(sketch_levels_for_universe(static_cast<uint64_t>(n) * n)),
      subs_(sketch_subs),
      hash_(mix64(seed, 0xd5e1), static_cast<uint64_t>(s_),
            static_cast<int>(std::min<long long>(s_ * 8, 1 << 20)),
            hash_mode) {}

DenseSampler::Bucket& DenseSampler::bucket(uint64_t b) {
  auto it = buckets_.find(b);
  if (it == buckets_.end()) {
    it = buckets_
             .emplace(b, Bucket{L0Sampler(variant_, mix64(seed_, 0xbc, b),
                                          levels_, subs_),
                                kNone, 0})
             .first;
  }
  return it->second;
}

void DenseSampler::update(uint64_t key, int delta, std::vector<Diff>* diff) {
  uint64_t b = hash_(key);
  Bucket& bk = bucket(b);
  bk.load += delta;
  bk.sampler.update(key, delta);
  EmitResult e = bk.sampler.emit();
  uint64_t now = kNone;
  if (e.status == EmitResult::Status::Ok)
    now = e.key;
  else if (e.status == EmitResult::Status::Fail)
    ++fails_;
  if (now == bk.emit) return;
  int changes = 0;
  if (bk.emit != kNone) {
    emitted_.erase(bk.emit);
    if (diff) diff->push_back({bk.emit, -1});
    ++changes;
  }
  if (now != kNone) {
    emitted_[now] = b;
    if (diff) diff->push_back({now, +1});
    ++changes;
  }
  bk.emit = now;
  assert(changes <= 2);
}

std::vector<uint64_t> DenseSampler::snapshot() const {
  std::vector<uint64_t> out;
  out.reserve(emitted_.size());
  for (const auto& [key, b] : emitted_) out.push_back(key);
  return out;
}

std::vector<long long> DenseSampler::occupancy_histogram() const {
  std::vector<long long> hist;
  long long nonempty = 0;
  for (const auto& [id, bk] : buckets_) {
    if (hist.size() <= static_cast<size_t>(bk.load)) hist.resize(bk.load + 1, 0);
    ++hist[bk.load];
    if (bk.load > 0) ++nonempty;
  }
  if (hist.empty()) hist.resize(1, 0);
  hist[0] = s_ - nonempty;
  return hist;
}

}  // namespace densestream
