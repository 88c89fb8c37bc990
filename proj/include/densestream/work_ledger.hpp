#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace densestream {

// Counts elementary maintenance operations: one unit per edge-list touch,
// 1 + (prefix degree) units per node level change. Used to measure amortized
// update cost against the t*L/eps budget.
struct WorkLedger {
  uint64_t total = 0;
  bool record_breakdown = false;
  std::vector<std::pair<uint64_t, uint64_t>> breakdown;  // (event idx, ops)

  void add(uint64_t ops) { total += ops; }

  void close_event(uint64_t event_index) {
    if (record_breakdown)
      breakdown.emplace_back(event_index, total - last_mark_);
    last_mark_ = total;
  }

 private:
  uint64_t last_mark_ = 0;
};

}  // namespace densestream
