#pragma once

#include <cstdint>
#include <vector>

#include "densestream/graph.hpp"
#include "densestream/rational.hpp"

namespace densestream::oracle {

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExactResult {
  Rational density;
  std::vector<NodeId> witness;
};

// Maximum |E(S)|/|S| over nonempty S, exactly, via a Stern-Brocot refinement
// over candidate densities where each probe is one max-flow min-cut. Witness
// is extracted from the source side of the final cut.
ExactResult exact_undirected(const DynamicGraph& g, NodeId cap = 500);

// Exhaustive maximum over all nonempty subsets (oracle for the oracle).
ExactResult exact_undirected_bruteforce(const DynamicGraph& g, NodeId cap = 20);

struct DirectedExactResult {
  long long edges = 0;  // |E(X,Y)| of the optimal pair
  int x = 0, y = 0;     // |X|, |Y|
  double density = 0;   // edges / sqrt(x*y)
  std::vector<NodeId> witness_x, witness_y;
  double lambda_s = 0, lambda_t = 0;
};

// Exact maximum of |E(X,Y)|/sqrt(|X||Y|) by enumeration over pairs of
// nonempty subsets. Also reports the degree floors of the optimal pair.
DirectedExactResult exact_directed(const DirectedDynamicGraph& g,
                                   NodeId cap = 10);

// Greedy min-degree peeling; the densest intermediate prefix is within a
// factor 2 of the optimum.
ExactResult charikar_peel(const DynamicGraph& g);

Rational subset_density(const DynamicGraph& g,
                        const std::vector<NodeId>& nodes);

}  // namespace densestream::oracle
