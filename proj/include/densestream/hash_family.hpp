#pragma once

#include <cstdint>
#include <vector>

#include "densestream/kernels/mersenne61.hpp"

namespace densestream {

// Hash family over 64-bit keys with range [0, q). Two modes:
//  - Polynomial: a degree-(w-1) polynomial with random coefficients over the
//    61-bit Mersenne field; evaluations of any w distinct keys are jointly
//    uniform. Degree is capped at kMaxPolynomialWise.
//  - SeededPseudorandom: a keyed mixer treated as fully independent; used when
//    the requested independence exceeds the polynomial cap.
enum class HashMode { Auto, Polynomial, SeededPseudorandom };

inline constexpr int kMaxPolynomialWise = 256;

class HashFamily {
 public:
  // `wise` is the requested independence w (>= 1). Auto picks Polynomial for
  // wise <= kMaxPolynomialWise, SeededPseudorandom above.
  HashFamily(uint64_t seed, uint64_t range, int wise,
             HashMode mode = HashMode::Auto);

  uint64_t operator()(uint64_t key) const;
  void eval_batch(const uint64_t* keys, uint64_t* out, size_t count) const;

  uint64_t range() const { return range_; }
  bool polynomial() const { return polynomial_; }

 private:
  uint64_t seed_;
  uint64_t range_;
  bool polynomial_;
  std::vector<uint64_t> coeffs_;  // leading coefficient first
};

// Canonical 64-bit key for an unordered node pair, min*n + max.
inline uint64_t edge_key(uint32_t u, uint32_t v, uint32_t n) {
  uint64_t lo = u < v ? u : v;
  uint64_t hi = u < v ? v : u;
  return lo * static_cast<uint64_t>(n) + hi;
}

inline std::pair<uint32_t, uint32_t> edge_from_key(uint64_t key, uint32_t n) {
  return {static_cast<uint32_t>(key / n), static_cast<uint32_t>(key % n)};
}

// Ordered key for directed edges.
inline uint64_t arc_key(uint32_t u, uint32_t v, uint32_t n) {
  return static_cast<uint64_t>(u) * n + v;
}

}  // namespace densestream
