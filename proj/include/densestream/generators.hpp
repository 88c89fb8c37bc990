#pragma once

#include <string>

#include "densestream/stream_io.hpp"

namespace densestream::gen {

struct GenParams {
  NodeId n = 100;
  int clique = 10;        // planted clique size
  double p = 0.1;         // background edge probability
  long long steps = 1000; // event count for evolving kinds
  long long target_m = 0; // 0 = derived default
  int checkpoint_every = 0;  // 0 = single final checkpoint
  uint64_t seed = 1;
};

// kinds: clique-buildup, planted-clique, erdos-renyi-dynamic, churn
StreamFile generate(const std::string& kind, const GenParams& params);

StreamFile clique_buildup(int k);
StreamFile planted_clique(const GenParams& params);
StreamFile erdos_renyi_dynamic(const GenParams& params);
StreamFile churn(const GenParams& params);

}  // namespace densestream::gen
