#include "densestream/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace densestream::oracle {

namespace {

// Highest-label push-relabel with the gap heuristic. Capacities are int64.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : n_(n), head_(n, -1), excess_(n, 0), height_(n, 0) {}

  void add_edge(int u, int v, long long cap, long long rcap = 0) {
    arcs_.push_back({v, head_[u], cap});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({u, head_[v], rcap});
    head_[v] = static_cast<int>(arcs_.size()) - 1;
  }

  long long run(int s, int t) {
    s_ = s;
    t_ = t;
    height_.assign(n_, 0);
    height_[s] = n_;
    excess_.assign(n_, 0);
    count_.assign(2 * n_ + 1, 0);
    count_[0] = n_ - 1;
    count_[n_] = 1;
    buckets_.assign(2 * n_ + 1, {});
    highest_ = 0;
    cur_ = head_;
    for (int a = head_[s]; a != -1; a = arcs_[a].next) {
      long long delta = arcs_[a].cap;
      if (delta <= 0) continue;
      arcs_[a].cap = 0;
      arcs_[a ^ 1].cap += delta;
      excess_[arcs_[a].to] += delta;
      excess_[s] -= delta;
      if (arcs_[a].to != t && excess_[arcs_[a].to] == delta)
        push_bucket(arcs_[a].to);
    }
    while (highest_ >= 0) {
      while (highest_ >= 0 && buckets_[highest_].empty()) --highest_;
      if (highest_ < 0) break;
      int v = buckets_[highest_].back();
      buckets_[highest_].pop_back();
      if (excess_[v] <= 0 || v == s_ || v == t_) continue;
      discharge(v);
    }
    return excess_[t];
  }

  // Source side of the min cut (callable after run).
  std::vector<char> min_cut_source_side() const {
    std::vector<char> vis(n_, 0);
    std::vector<int> stack{s_};
    vis[s_] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int a = head_[v]; a != -1; a = arcs_[a].next)
        if (arcs_[a].cap > 0 && !vis[arcs_[a].to]) {
          vis[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
    }
    return vis;
  }

 private:
  struct Arc {
    int to;
    int next;
    long long cap;
  };

  void push_bucket(int v) {
    buckets_[height_[v]].push_back(v);
    if (height_[v] > highest_) highest_ = height_[v];
  }

  void discharge(int v) {
    while (excess_[v] > 0) {
      if (cur_[v] == -1) {
        relabel(v);
        if (height_[v] >= 2 * n_) return;
        continue;
      }
      Arc& a = arcs_[cur_[v]];
      if (a.cap > 0 && height_[v] == height_[a.to] + 1) {
        long long delta = std::min(excess_[v], a.cap);
        a.cap -= delta;
        arcs_[cur_[v] ^ 1].cap += delta;
        excess_[v] -= delta;
        bool was_empty = excess_[a.to] == 0;
        excess_[a.to] += delta;
        if (was_empty && a.to != s_ && a.to != t_) push_bucket(a.to);
      } else {
        cur_[v] = a.next;
      }
    }
  }

  void relabel(int v) {
    int old = height_[v];
    int best = 2 * n_;
    for (int a = head_[v]; a != -1; a = arcs_[a].next)
      if (arcs_[a].cap > 0) best = std::min(best, height_[arcs_[a].to] + 1);
    if (--count_[old] == 0 && old < n_) {
      // Gap: nothing can route through heights in (old, n); lift them past n.
      for (int u = 0; u < n_; ++u)
        if (u != s_ && height_[u] > old && height_[u] < n_) {
          --count_[height_[u]];
          height_[u] = n_ + 1;
          ++count_[height_[u]];
        }
    }
    height_[v] = best;
    ++count_[best];
    cur_[v] = head_[v];
    if (excess_[v] > 0 && height_[v] < 2 * n_) push_bucket(v);
  }

  int n_, s_ = 0, t_ = 0;
  std::vector<int> head_, cur_;
  std::vector<Arc> arcs_;
  std::vector<long long> excess_;
  std::vector<int> height_, count_;
  std::vector<std::vector<int>> buckets_;
  int highest_ = 0;
};

// Does G contain a nonempty S with |E(S)|/|S| > a/b? One flow probe on the
// standard density network with capacities scaled by b. Fills `side` with the
// source side when requested.
bool density_exceeds(const DynamicGraph& g, long long a, long long b,
                     std::vector<char>* side = nullptr) {
  int n = g.n();
  long long m = static_cast<long long>(g.m());
  MaxFlow flow(n + 2);
  int src = n, dst = n + 1;
  for (int v = 0; v < n; ++v) {
    flow.add_edge(src, v, m * b);
    flow.add_edge(v, dst, m * b + 2 * a - static_cast<long long>(g.degree(v)) * b);
    for (NodeId u : g.neighbors(static_cast<NodeId>(v)))
      if (u > static_cast<NodeId>(v)) flow.add_edge(v, u, b, b);
  }
  long long cut = flow.run(src, dst);
  bool exceeds = cut < m * b * n;
  if (side && exceeds) *side = flow.min_cut_source_side();
  return exceeds;
}

}  // namespace

Rational subset_density(const DynamicGraph& g,
                        const std::vector<NodeId>& nodes) {
  if (nodes.empty()) return Rational(0);
  std::vector<char> in(g.n(), 0);
  for (NodeId v : nodes) in[v] = 1;
  long long e = 0;
  for (NodeId v : nodes)
    for (NodeId u : g.neighbors(v))
      if (in[u] && u > v) ++e;
  return Rational(e, static_cast<long long>(nodes.size()));
}

ExactResult exact_undirected(const DynamicGraph& g, NodeId cap) {
  if (g.n() > cap)
    throw CapExceeded("exact_undirected: n exceeds cap " + std::to_string(cap));
  if (g.m() == 0) return {Rational(0), {}};

  long long n = g.n();
  // Stern-Brocot descent with galloping. Invariant: density > lo, density
  // <= hi, lo and hi are Farey neighbors, so once the mediant denominator
  // passes n the answer is exactly hi.
  long long ln = 0, ld = 1;   // lo = ln/ld, predicate true (d* > lo)
  long long hn = 1, hd = 0;   // hi = hn/hd, predicate false (d* <= hi)
  auto pred = [&](long long a, long long b) { return density_exceeds(g, a, b); };
  for (;;) {
    long long mn = ln + hn, md = ld + hd;
    if (md > n) break;
    if (pred(mn, md)) {
      // Gallop right: largest k with lo_k = (ln + k*hn)/(ld + k*hd) still
      // below the optimum (and denominator within range).
      long long k = 1;
      while (true) {
        long long k2 = k * 2;
        if (ld + k2 * hd > n || !pred(ln + k2 * hn, ld + k2 * hd)) break;
        k = k2;
      }
      long long lo_k = k, hi_k = k * 2;
      while (lo_k + 1 < hi_k) {
        long long mid = (lo_k + hi_k) / 2;
        if (ld + mid * hd <= n && pred(ln + mid * hn, ld + mid * hd))
          lo_k = mid;
        else
          hi_k = mid;
      }
      ln += lo_k * hn;
      ld += lo_k * hd;
    } else {
      long long k = 1;
      while (true) {
        long long k2 = k * 2;
        if (hd + k2 * ld > n || pred(hn + k2 * ln, hd + k2 * ld)) break;
        k = k2;
      }
      long long lo_k = k, hi_k = k * 2;
      while (lo_k + 1 < hi_k) {
        long long mid = (lo_k + hi_k) / 2;
        if (hd + mid * ld <= n && !pred(hn + mid * ln, hd + mid * ld))
          lo_k = mid;
        else
          hi_k = mid;
      }
      hn += lo_k * ln;
      hd += lo_k * ld;
    }
  }

  // One more probe at lo to extract a witness achieving density hi.
  std::vector<char> side;
  density_exceeds(g, ln, ld, &side);
  ExactResult res;
  res.density = Rational(hn, hd);
  for (NodeId v = 0; v < g.n(); ++v)
    if (!side.empty() && side[v]) res.witness.push_back(v);
  return res;
}

ExactResult exact_undirected_bruteforce(const DynamicGraph& g, NodeId cap) {
  if (g.n() > cap || g.n() > 24)
    throw CapExceeded("exact_undirected_bruteforce: n exceeds cap");
  int n = g.n();
  std::vector<uint32_t> adj(n, 0);
  for (int v = 0; v < n; ++v)
    for (NodeId u : g.neighbors(static_cast<NodeId>(v))) adj[v] |= 1u << u;
  uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<int> edges(static_cast<size_t>(full) + 1, 0);
  Rational best(0);
  uint32_t best_mask = 0;
  for (uint32_t mask = 1; mask <= full; ++mask) {
    uint32_t low = mask & (mask - 1);
    int v = __builtin_ctz(mask);
    edges[mask] = edges[low] + __builtin_popcount(adj[v] & low);
    Rational d(edges[mask], __builtin_popcount(mask));
    if (d > best) {
      best = d;
      best_mask = mask;
    }
  }
  ExactResult res;
  res.density = best;
  for (int v = 0; v < n; ++v)
    if (best_mask >> v & 1) res.witness.push_back(static_cast<NodeId>(v));
  return res;
}

DirectedExactResult exact_directed(const DirectedDynamicGraph& g, NodeId cap) {
  if (g.n() > cap || g.n() > 12)
    throw CapExceeded("exact_directed: n exceeds cap");
  int n = g.n();
  std::vector<uint32_t> out(n, 0);
  for (int v = 0; v < n; ++v)
    for (NodeId u : g.out_neighbors(static_cast<NodeId>(v))) out[v] |= 1u << u;
  uint32_t full = (1u << n) - 1;

  DirectedExactResult res;
  if (g.m() == 0) return res;

  std::vector<int> cnt(n);  // cnt[v] = |out(v) & Y| for the current Y
  std::vector<long long> edges_to(static_cast<size_t>(full) + 1);
  long long best_e = 0;
  long long best_xy = 1;
  int best_x = 1, best_y = 1;
  uint32_t best_xmask = 0, best_ymask = 0;
  for (uint32_t ymask = 1; ymask <= full; ++ymask) {
    for (int v = 0; v < n; ++v) cnt[v] = __builtin_popcount(out[v] & ymask);
    edges_to[0] = 0;
    for (uint32_t xmask = 1; xmask <= full; ++xmask) {
      uint32_t low = xmask & (xmask - 1);
      edges_to[xmask] = edges_to[low] + cnt[__builtin_ctz(xmask)];
      long long e = edges_to[xmask];
      long long xy = static_cast<long long>(__builtin_popcount(xmask)) *
                     __builtin_popcount(ymask);
      // e1/sqrt(xy1) > e2/sqrt(xy2)  <=>  e1^2 * xy2 > e2^2 * xy1
      if (e * e * best_xy > best_e * best_e * xy) {
        best_e = e;
        best_xy = xy;
        best_x = __builtin_popcount(xmask);
        best_y = __builtin_popcount(ymask);
        best_xmask = xmask;
        best_ymask = ymask;
      }
    }
  }
  res.edges = best_e;
  res.x = best_x;
  res.y = best_y;
  res.density = best_e / std::sqrt(static_cast<double>(best_xy));
  for (int v = 0; v < n; ++v) {
    if (best_xmask >> v & 1) res.witness_x.push_back(static_cast<NodeId>(v));
    if (best_ymask >> v & 1) res.witness_y.push_back(static_cast<NodeId>(v));
  }
  res.lambda_s = best_e * (1.0 - std::sqrt(1.0 - 1.0 / best_x));
  res.lambda_t = best_e * (1.0 - std::sqrt(1.0 - 1.0 / best_y));
  return res;
}

ExactResult charikar_peel(const DynamicGraph& g) {
  int n = g.n();
  if (g.m() == 0) return {Rational(0), {}};
  std::vector<long long> deg(n);
  std::vector<char> alive(n, 1);
  // Bucket queue over degrees; stale entries are skipped.
  std::vector<std::vector<NodeId>> buckets(n);
  for (int v = 0; v < n; ++v) {
    deg[v] = g.degree(static_cast<NodeId>(v));
    buckets[deg[v]].push_back(static_cast<NodeId>(v));
  }
  long long e = g.m(), alive_cnt = n;
  Rational best(e, alive_cnt);
  long long best_step = 0;  // number of removals at the best prefix
  std::vector<NodeId> removal_order;
  size_t cur = 0;
  while (alive_cnt > 0) {
    while (cur < buckets.size() && buckets[cur].empty()) ++cur;
    if (cur >= buckets.size()) break;
    NodeId v = buckets[cur].back();
    buckets[cur].pop_back();
    if (!alive[v] || deg[v] != static_cast<long long>(cur)) continue;
    alive[v] = 0;
    removal_order.push_back(v);
    e -= deg[v];
    --alive_cnt;
    for (NodeId u : g.neighbors(v))
      if (alive[u]) {
        --deg[u];
        buckets[deg[u]].push_back(u);
        if (static_cast<size_t>(deg[u]) < cur) cur = deg[u];
      }
    if (alive_cnt > 0) {
      Rational d(e, alive_cnt);
      if (d > best) {
        best = d;
        best_step = static_cast<long long>(removal_order.size());
      }
    }
  }
  std::vector<char> removed(n, 0);
  for (long long i = 0; i < best_step; ++i) removed[removal_order[i]] = 1;
  ExactResult res;
  res.density = best;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) res.witness.push_back(static_cast<NodeId>(v));
  return res;
}

}  // namespace densestream::oracle
