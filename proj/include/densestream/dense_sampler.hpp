#pragma once

#include <unordered_map>
#include <vector>

#include "densestream/hash_family.hpp"
#include "densestream/l0_sampler.hpp"
#include "densestream/params.hpp"

namespace densestream {

// Near-uniform edge sample of expected size ~min(s, m): edges hash into s
// buckets, each bucket contributes its sampler's current emission. One graph
// update touches exactly one bucket, hence changes the sample set by at most
// two keys. Inclusion indicators across edges are negatively associated
// (same-bucket keys are never co-selected).
class DenseSampler {
 public:
  struct Diff {
    uint64_t key;
    int delta;
  };

  DenseSampler(NodeId n, long long s, uint64_t seed, SamplerVariant variant,
               HashMode hash_mode, int sketch_subs);

  void update(uint64_t key, int delta, std::vector<Diff>* diff = nullptr);

  std::vector<uint64_t> snapshot() const;  // current sample S, unsorted
  long long bucket_count() const { return s_; }
  size_t sample_size() const { return emitted_.size(); }
  bool selected(uint64_t key) const { return emitted_.count(key) > 0; }
  uint64_t bucket_of(uint64_t key) const { return hash_(key); }
  uint64_t fail_count() const { return fails_; }
  std::vector<long long> occupancy_histogram() const;

 private:
  struct Bucket {
    L0Sampler sampler;
    uint64_t emit;  // kNone when nothing emitted
    long long load = 0;
  };
  static constexpr uint64_t kNone = ~uint64_t(0);

  Bucket& bucket(uint64_t b);

  long long s_;
  uint64_t seed_;
  SamplerVariant variant_;
  int levels_, subs_;
  HashFamily hash_;
  std::unordered_map<uint64_t, Bucket> buckets_;  // lazily materialized
  std::unordered_map<uint64_t, uint64_t> emitted_;  // key -> bucket
  uint64_t fails_ = 0;
};

}  // namespace densestream
