#pragma once

#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "densestream/graph.hpp"
#include "densestream/params.hpp"

namespace densestream {

struct InsufficientSamples : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Single-pass estimator: keep a bank of independent uniform edge samples and
// an exact edge counter while the stream runs; at end of stream build, for
// every rung of the grid over [m/(2 alpha n), 2(1+eps)n], a sampled peeling
// decomposition from per-level sample groups, and report d_k'/(2(1+eps)^2)
// for the highest rung whose top level survives.
class OneshotEngine {
 public:
  OneshotEngine(NodeId n, const Config& cfg);

  void ingest(const UpdateEvent& e);
  long long edge_count() const { return m_; }

  struct Result {
    double estimate = 0;
    int k_prime = 0;
    long long draws = 0;
    long long bank_capacity = 0;
    int rungs = 0;
  };

  // Deterministic given (seed, final edge set): samples are drawn from the
  // sorted support, with replacement, on disjoint seed streams per
  // (rung, level, index).
  Result finalize() const;
  double finalize_estimate() const { return finalize().estimate; }

  double alpha() const { return params_.alpha; }
  NodeId n() const { return n_; }

 private:
  NodeId n_;
  Config cfg_;
  OneshotParams params_;
  long long m_ = 0;
  std::vector<uint64_t> support_;
  std::unordered_map<uint64_t, uint32_t> pos_;
};

}  // namespace densestream
