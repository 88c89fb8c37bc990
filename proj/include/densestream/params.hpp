#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "densestream/graph.hpp"
#include "densestream/hash_family.hpp"

namespace densestream {

enum class Mode { Full, Oneshot, Stream, Directed, Oracle };
enum class SamplerVariant { Reference, Sketch };

struct Config {
  double epsilon = 0.1;
  double alpha = 0;  // 0 = resolve per mode
  double c = 8.0;    // concentration constant for sampled-degree thresholds
  double scale = 1.0;
  uint64_t seed = 1;
  HashMode hash_mode = HashMode::Auto;
  double failure_budget = 0.05;
  // Sparse-recovery sizing; 0 = derived defaults (buckets ~ 2n*scale, 32
  // samplers per bucket, which keeps the sampler budget at ~64n).
  long long sparse_buckets = 0;
  int sparse_reps = 0;
  int sketch_subs = 4;  // independent recovery arrays per sketch sampler
  SamplerVariant dense_variant = SamplerVariant::Reference;
  // One-shot sample bank capacity; 0 = lambda_star * K_star.
  long long bank_capacity = 0;

  double resolved_alpha(Mode mode) const {
    if (alpha > 0) return alpha;
    if (mode == Mode::Oneshot) return (1 + epsilon) / (1 - epsilon);
    return 2 + 3 * epsilon;
  }
};

// Smallest j >= 0 with ratio^j >= x.
int ceil_log(double x, double ratio);

// 2 + ceil(log_{1+eps} n)
int levels_undirected(NodeId n, double eps);
// 2 * (2 + ceil(log_{1+eps} n))
int levels_directed(NodeId n, double eps);

// Geometric threshold grid d_k = base * ratio^(k-1), k in [1, K].
struct Ladder {
  double base = 0;
  double ratio = 1;
  int K = 0;
  double d(int k) const { return base * std::pow(ratio, k - 1); }
};

// Full-space grid covering [1/(4n), 4n].
Ladder full_ladder(NodeId n, double eps);

// Rung count for the m-dependent grid with base m/(2*alpha*n) and top
// 2(1+eps)n; the count itself is m-independent.
int stream_rungs(NodeId n, double eps, double alpha);

// Sampled-degree threshold unit ("c log n" at desk scale).
inline double theta_unit(NodeId n, const Config& cfg) {
  return cfg.c * std::log(static_cast<double>(n)) * cfg.scale;
}

// Bucket count for the rung-k bucketed edge sampler: 2*alpha*c*n*log(n)*
// scale / (1+eps)^(k-1), at least 1.
long long dense_buckets(int k, NodeId n, double eps, double alpha,
                        const Config& cfg);

struct SparseParams {
  long long buckets = 0;  // w; doubles as the dense-regime entry threshold
  int reps = 0;           // samplers per bucket
};
SparseParams sparse_params(NodeId n, const Config& cfg);

struct RegimeThresholds {
  long long enter_dense = 0;
  long long exit_dense = 0;
};
inline RegimeThresholds regime_thresholds(const SparseParams& sp) {
  return {sp.buckets, (sp.buckets + 1) / 2};
}

// One-shot bank sizing.
struct OneshotParams {
  int L = 0;
  int K_star = 0;
  long long lambda_star = 0;  // bank rows; capacity = lambda_star * K_star
  double alpha = 0;
};
OneshotParams oneshot_params(NodeId n, const Config& cfg);

// Directed grid q_k = (1+eps)^(k-1) * lambda_star / alpha for k in [0, K],
// K = min k with q_k >= n^2.
struct DirectedLadder {
  std::vector<double> q;  // size K+1
  double lambda_star = 0;
};
DirectedLadder directed_ladder(NodeId n, double eps, double alpha);

}  // namespace densestream
