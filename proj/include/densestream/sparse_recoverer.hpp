#pragma once

#include <unordered_map>
#include <vector>

#include "densestream/hash_family.hpp"
#include "densestream/l0_sampler.hpp"
#include "densestream/params.hpp"

namespace densestream {

// Full-recovery structure for sparse phases: edges are hashed into `buckets`
// buckets, each watched by `reps` independent sketch samplers. The recovered
// set F is every key currently emitted by at least one sampler; while the
// live edge count stays at most ~buckets, F equals the true edge set with
// high probability. F never contains an absent key.
class SparseRecoverer {
 public:
  struct Diff {
    uint64_t key;
    int delta;  // +1 entered F, -1 left F
  };

  SparseRecoverer(NodeId n, const SparseParams& params, uint64_t seed,
                  HashMode hash_mode, int sketch_subs);

  void update(uint64_t key, int delta, std::vector<Diff>* fdiff = nullptr);

  std::vector<uint64_t> snapshot() const;  // F, unsorted
  bool contains(uint64_t key) const { return refcnt_.count(key) > 0; }
  size_t recovered_size() const { return refcnt_.size(); }
  long long buckets() const { return buckets_; }
  int reps() const { return reps_; }
  uint64_t fail_count() const { return fails_; }
  std::vector<long long> occupancy_histogram() const;

 private:
  static constexpr uint64_t kNone = ~uint64_t(0);

  void apply_emit_change(size_t sampler, uint64_t now,
                         std::vector<Diff>* fdiff);

  long long buckets_;
  int reps_;
  HashFamily hash_;
  std::vector<SketchL0> samplers_;     // bucket-major: bucket*reps + j
  std::vector<uint64_t> cur_emit_;     // kNone when Empty/Fail
  std::vector<long long> bucket_load_;
  std::unordered_map<uint64_t, int> refcnt_;
  uint64_t fails_ = 0;
  std::vector<uint64_t> zk_bases_, zk_out_;
};

}  // namespace densestream
