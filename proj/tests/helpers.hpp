#pragma once

#include <utility>
#include <vector>

#include "densestream/graph.hpp"
#include "densestream/rng.hpp"

namespace densestream::testutil {

inline DynamicGraph make_graph(NodeId n,
                               const std::vector<std::pair<NodeId, NodeId>>& edges) {
  DynamicGraph g(n);
  for (auto [u, v] : edges) g.insert_edge(u, v);
  return g;
}

inline DynamicGraph complete_graph(NodeId k, NodeId n = 0) {
  DynamicGraph g(n ? n : k);
  for (NodeId u = 0; u < k; ++u)
    for (NodeId v = u + 1; v < k; ++v) g.insert_edge(u, v);
  return g;
}

inline std::vector<std::pair<NodeId, NodeId>> random_edges(NodeId n, double p,
                                                           uint64_t seed) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  Rng rng(seed, 0x7e57);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.chance(p)) edges.emplace_back(u, v);
  return edges;
}

inline DynamicGraph random_graph(NodeId n, double p, uint64_t seed) {
  return make_graph(n, random_edges(n, p, seed));
}

}  // namespace densestream::testutil
