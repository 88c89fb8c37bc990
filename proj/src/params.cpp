#include "densestream/params.hpp"

#include <algorithm>

namespace densestream {

int ceil_log(double x, double ratio) {
  int j = 0;
  double acc = 1.0;
  while (acc < x) {
    acc *= ratio;
    ++j;
  }
  return j;
}

int levels_undirected(NodeId n, double eps) {
  return 2 + ceil_log(static_cast<double>(n), 1 + eps);
}

int levels_directed(NodeId n, double eps) {
  return 2 * (2 + ceil_log(static_cast<double>(n), 1 + eps));
}

Ladder full_ladder(NodeId n, double eps) {
  Ladder lad;
  lad.base = 1.0 / (4.0 * n);
  lad.ratio = 1 + eps;
  double sigma = 4.0 * n;
  lad.K = 2 + ceil_log(sigma / lad.base, lad.ratio);
  return lad;
}

int stream_rungs(NodeId n, double eps, double alpha) {
  double sigma = 2 * (1 + eps) * n;
  return 2 + ceil_log(sigma * 2 * alpha * n, 1 + eps);
}

long long dense_buckets(int k, NodeId n, double eps, double alpha,
                        const Config& cfg) {
  double s = 2 * alpha * cfg.c * n * std::log(static_cast<double>(n)) *
             cfg.scale / std::pow(1 + eps, k - 1);
  return std::max(1ll, static_cast<long long>(std::llround(s)));
}

SparseParams sparse_params(NodeId n, const Config& cfg) {
  SparseParams sp;
  sp.reps = cfg.sparse_reps > 0 ? cfg.sparse_reps : 32;
  sp.reps = std::clamp(sp.reps, 2, 256);
  if (cfg.sparse_buckets > 0) {
    sp.buckets = cfg.sparse_buckets;
  } else {
    sp.buckets = std::max<long long>(
        16, std::llround(2.0 * n * cfg.scale));
  }
  return sp;
}

OneshotParams oneshot_params(NodeId n, const Config& cfg) {
  OneshotParams p;
  p.alpha = cfg.resolved_alpha(Mode::Oneshot);
  p.L = levels_undirected(n, cfg.epsilon);
  p.K_star =
      2 + ceil_log(8 * p.alpha * static_cast<double>(n) * n, 1 + cfg.epsilon);
  double lam = 2 * p.alpha * cfg.c * static_cast<double>(n) * (p.L - 1) *
               std::log(static_cast<double>(n)) * cfg.scale;
  p.lambda_star = std::max<long long>(1, std::llround(lam));
  return p;
}

DirectedLadder directed_ladder(NodeId n, double eps, double alpha) {
  DirectedLadder lad;
  lad.lambda_star = 1.0 - std::sqrt(1.0 - 1.0 / n);
  double target = static_cast<double>(n) * n;
  double q = lad.lambda_star / (alpha * (1 + eps));  // q_0
  for (;;) {
    lad.q.push_back(q);
    if (q >= target) break;
    q *= 1 + eps;
  }
  return lad;
}

}  // namespace densestream
