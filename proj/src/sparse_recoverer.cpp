#include "densestream/sparse_recoverer.hpp"

namespace densestream {

SparseRecoverer::SparseRecoverer(NodeId n, const SparseParams& params,
                                 uint64_t seed, HashMode hash_mode,
                                 int sketch_subs)
    : buckets_(params.buckets),
      reps_(params.reps),
      hash_(mix64(seed, 0x3a11), static_cast<uint64_t>(params.buckets),
            static_cast<int>(params.buckets), hash_mode) {
  int levels = sketch_levels_for_universe(static_cast<uint64_t>(n) * n);
  size_t total = static_cast<size_t>(buckets_) * reps_;
  samplers_.reserve(total);
  for (size_t i = 0; i < total; ++i)
    samplers_.emplace_back(mix64(seed, 0xb0c0, i), levels, sketch_subs);
  cur_emit_.assign(total, kNone);
  bucket_load_.assign(buckets_, 0);
  zk_bases_.resize(reps_);
  zk_out_.resize(reps_);
}

void SparseRecoverer::apply_emit_change(size_t sampler, uint64_t now,
                                        std::vector<Diff>* fdiff) {
  uint64_t before = cur_emit_[sampler];
  if (before == now) return;
  cur_emit_[sampler] = now;
  if (before != kNone) {
    auto it = refcnt_.find(before);
    if (--it->second == 0) {
      refcnt_.erase(it);
      if (fdiff) fdiff->push_back({before, -1});
    }
  }
  if (now != kNone) {
    if (++refcnt_[now] == 1 && fdiff) fdiff->push_back({now, +1});
  }
}

void SparseRecoverer::update(uint64_t key, int delta,
                             std::vector<Diff>* fdiff) {
  uint64_t b = hash_(key);
  bucket_load_[b] += delta;
  size_t base = static_cast<size_t>(b) * reps_;
  // One modpow per sampler; same exponent, per-sampler bases, batched.
  for (int j = 0; j < reps_; ++j) zk_bases_[j] = samplers_[base + j].z();
  std::vector<uint64_t> exps(reps_, key);
  kern::ops().pow_batch(zk_bases_.data(), exps.data(), zk_out_.data(), reps_);
  for (int j = 0; j < reps_; ++j) {
    SketchL0& s = samplers_[base + j];
    s.update_with_zk(key, delta, zk_out_[j]);
    EmitResult e = s.emit();
    if (e.status == EmitResult::Status::Fail) {
      ++fails_;
      apply_emit_change(base + j, kNone, fdiff);
    } else if (e.status == EmitResult::Status::Empty) {
      apply_emit_change(base + j, kNone, fdiff);
    } else {
      apply_emit_change(base + j, e.key, fdiff);
    }
  }
}

std::vector<uint64_t> SparseRecoverer::snapshot() const {
  std::vector<uint64_t> out;
  out.reserve(refcnt_.size());
  for (const auto& [key, cnt] : refcnt_) out.push_back(key);
  return out;
}

std::vector<long long> SparseRecoverer::occupancy_histogram() const {
  std::vector<long long> hist;
  for (long long load : bucket_load_) {
    if (hist.size() <= static_cast<size_t>(load))
      hist.resize(load + 1, 0);
    ++hist[load];
  }
  return hist;
}

}  // namespace densestream
