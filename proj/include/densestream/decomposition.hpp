#pragma once

#include <string>
#include <vector>

#include "densestream/graph.hpp"
#include "densestream/rational.hpp"

namespace densestream {

// A nested peeling decomposition Z_1 >= Z_2 >= ... >= Z_L encoded as a level
// per node: level(v) = max { i : v in Z_i }. Z_1 is always the whole node
// set. Validity of the pair of thresholds (d, alpha*d) at prefix i means:
// every v in Z_i with more than alpha*d neighbors inside Z_i is in Z_{i+1},
// and every v in Z_i with fewer than d neighbors inside Z_i is not.
struct Decomposition {
  std::vector<uint16_t> level;  // values in [1, L]
  int L = 1;
  double alpha = 1.0;
  double d = 0.0;

  std::vector<NodeId> prefix(int i) const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < level.size(); ++v)
      if (level[v] >= i) out.push_back(v);
    return out;
  }
};

struct Violation {
  NodeId node;
  int level;
  long long degree;
  std::string rule;
};

struct ViolationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

// Deterministic static builder. Peels maximally: a node whose prefix degree
// lies in [d, alpha*d] is excluded from the next prefix.
Decomposition build_peeling(const DynamicGraph& g, const Rational& alpha,
                            const Rational& d, int L);

ViolationReport check_valid(const DynamicGraph& g, const Decomposition& dec,
                            const Rational& alpha, const Rational& d);

// Convenience overload using the decomposition's stored double thresholds
// (converted exactly from their binary representation).
ViolationReport check_valid(const DynamicGraph& g, const Decomposition& dec);

// Densest of the prefixes Z_1..Z_{L-1}; ties break toward smaller level.
// Density of an empty prefix is 0.
std::pair<int, Rational> densest_prefix(const DynamicGraph& g,
                                        const Decomposition& dec);

// Exact rational from a double that is known to be a (sum of) dyadic values;
// falls back to a denominator-2^40 rounding for irrational ladder thresholds.
Rational rational_from_double(double x);

std::string decomposition_to_json(const Decomposition& dec);
Decomposition decomposition_from_json(const std::string& text);

}  // namespace densestream
