#include "densestream/l0_sampler.hpp"

#include <bit>

namespace densestream {

int sketch_levels_for_universe(uint64_t universe) {
  int bits = 1;
  while ((uint64_t(1) << bits) < universe && bits < 40) ++bits;
  int levels = bits + 3;
  return levels < 6 ? 6 : (levels > 40 ? 40 : levels);
}

SketchL0::SketchL0(uint64_t seed, int levels, int subs)
    : seed_(seed),
      levels_(levels),
      subs_(subs),
      cells_(static_cast<size_t>(levels) * subs) {
  // Random evaluation point for the fingerprint identity; nonzero.
  z_ = 1 + Rng(seed, 0xf1e1).below(kern::kMersenne61 - 1);
}

int SketchL0::mark(uint64_t key, int sub) const {
  uint64_t h = mix64(seed_ ^ (0x5b5b00000000ull + sub), key);
  int lz = std::countl_zero(h);
  return lz >= levels_ ? levels_ - 1 : lz;
}

void SketchL0::update(uint64_t key, int delta) {
  update_with_zk(key, delta, kern::pow61(z_, key));
}

void SketchL0::update_with_zk(uint64_t key, int delta, uint64_t zk) {
  for (int s = 0; s < subs_; ++s) {
    int top = mark(key, s);
    Cell* base = &cells_[static_cast<size_t>(s) * levels_];
    for (int j = 0; j <= top; ++j) {
      Cell& c = base[j];
      c.count += delta;
      c.keysum += delta > 0 ? key : ~key + 1;  // wrapping +-key
      c.fp = delta > 0 ? kern::add61(c.fp, zk) : kern::sub61(c.fp, zk);
    }
  }
}

EmitResult SketchL0::emit() const {
  if (cells_[0].count == 0) return {EmitResult::Status::Empty, 0};
  for (int s = 0; s < subs_; ++s) {
    const Cell* base = &cells_[static_cast<size_t>(s) * levels_];
    // Marks are nested, so counts fall with the level; the first level
    // holding exactly one key (scanning up from the bottom) is the sub's
    // candidate.
    for (int j = 0; j < levels_; ++j) {
      const Cell& c = base[j];
      if (c.count == 0) break;
      if (c.count != 1) continue;
      if (c.fp == kern::pow61(z_, c.keysum))
        return {EmitResult::Status::Ok, c.keysum};
      break;  // cancellation artifact; this sub is unusable
    }
  }
  return {EmitResult::Status::Fail, 0};
}

void ReferenceL0::update(uint64_t key, int delta) {
  ++version_;
  if (delta > 0) {
    pos_[key] = static_cast<uint32_t>(keys_.size());
    keys_.push_back(key);
  } else {
    auto it = pos_.find(key);
    if (it == pos_.end()) return;
    uint32_t i = it->second;
    pos_.erase(it);
    if (i + 1 != keys_.size()) {
      keys_[i] = keys_.back();
      pos_[keys_[i]] = i;
    }
    keys_.pop_back();
  }
}

EmitResult ReferenceL0::emit() const {
  if (keys_.empty()) return {EmitResult::Status::Empty, 0};
  uint64_t pick = mix64(seed_, version_) % keys_.size();
  return {EmitResult::Status::Ok, keys_[pick]};
}

}  // namespace densestream
