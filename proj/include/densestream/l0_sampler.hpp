#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "densestream/kernels/mersenne61.hpp"
#include "densestream/params.hpp"
#include "densestream/rng.hpp"

namespace densestream {

struct EmitResult {
  enum class Status { Empty, Ok, Fail };
  Status status = Status::Empty;
  uint64_t key = 0;

  bool ok() const { return status == Status::Ok; }
};

// Small-space sampler over a set of 64-bit keys under inserts and deletes
// (set semantics). `subs` independent recovery arrays, each with `levels`
// geometric sub-sampling levels of (count, keysum, fingerprint) cells. A cell
// is declared a singleton iff count == 1 and its fingerprint matches
// z^keysum; the emitted key is then exact. Fails only when no level in any
// array isolates a single key.
class SketchL0 {
 public:
  SketchL0(uint64_t seed, int levels, int subs);

  void update(uint64_t key, int delta);
  // Batched path: caller supplies z^key (same key across many samplers).
  void update_with_zk(uint64_t key, int delta, uint64_t zk);
  uint64_t z() const { return z_; }

  EmitResult emit() const;
  bool empty() const { return cells_[0].count == 0; }
  long long support_size() const { return cells_[0].count; }

 private:
  struct Cell {
    long long count = 0;
    uint64_t keysum = 0;
    uint64_t fp = 0;
  };

  int mark(uint64_t key, int sub) const;

  uint64_t seed_;
  uint64_t z_;
  int levels_, subs_;
  std::vector<Cell> cells_;  // sub-major: sub * levels + level
};

// Exact sampler storing the support; emission is a deterministic function of
// (seed, mutation count), re-drawn on every change.
class ReferenceL0 {
 public:
  explicit ReferenceL0(uint64_t seed) : seed_(seed) {}

  void update(uint64_t key, int delta);
  EmitResult emit() const;
  bool empty() const { return keys_.empty(); }
  long long support_size() const { return static_cast<long long>(keys_.size()); }
  const std::vector<uint64_t>& keys() const { return keys_; }

 private:
  uint64_t seed_;
  uint64_t version_ = 0;
  std::vector<uint64_t> keys_;
  std::unordered_map<uint64_t, uint32_t> pos_;
};

// Variant wrapper used where the sampler flavor is a runtime choice.
class L0Sampler {
 public:
  L0Sampler(SamplerVariant variant, uint64_t seed, int levels, int subs)
      : variant_(variant) {
    if (variant == SamplerVariant::Sketch)
      sketch_.emplace(seed, levels, subs);
    else
      ref_.emplace(seed);
  }

  void update(uint64_t key, int delta) {
    if (sketch_)
      sketch_->update(key, delta);
    else
      ref_->update(key, delta);
  }
  EmitResult emit() const { return sketch_ ? sketch_->emit() : ref_->emit(); }
  bool empty() const { return sketch_ ? sketch_->empty() : ref_->empty(); }
  SamplerVariant variant() const { return variant_; }

 private:
  SamplerVariant variant_;
  std::optional<SketchL0> sketch_;
  std::optional<ReferenceL0> ref_;
};

// Sketch level count that comfortably isolates supports up to ~n^2 keys.
int sketch_levels_for_universe(uint64_t universe);

}  // namespace densestream
