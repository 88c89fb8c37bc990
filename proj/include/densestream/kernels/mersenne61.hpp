#pragma once

#include <cstddef>
#include <cstdint>

// Arithmetic over the Mersenne prime field F_p, p = 2^61 - 1. These are the
// inner loops of the hashing and sketch layers: batch variants have a scalar
// reference implementation and (on x86-64) an AVX2 implementation selected at
// runtime. The two are exact-equivalence tested.

namespace densestream::kern {

inline constexpr uint64_t kMersenne61 = (uint64_t(1) << 61) - 1;

// a, b < 2^61. Result < p.
inline uint64_t mul61(uint64_t a, uint64_t b) {
  __uint128_t prod = static_cast<__uint128_t>(a) * b;
  uint64_t lo = static_cast<uint64_t>(prod) & kMersenne61;
  uint64_t hi = static_cast<uint64_t>(prod >> 61);
  uint64_t r = lo + hi;
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

inline uint64_t add61(uint64_t a, uint64_t b) {
  uint64_t r = a + b;
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

inline uint64_t sub61(uint64_t a, uint64_t b) {
  return a >= b ? a - b : a + kMersenne61 - b;
}

inline uint64_t pow61(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  uint64_t b = base % kMersenne61;
  while (exp) {
    if (exp & 1) r = mul61(r, b);
    b = mul61(b, b);
    exp >>= 1;
  }
  return r;
}

struct Ops {
  const char* name;
  // out[i] = a[i] * b[i] mod p
  void (*mul_batch)(const uint64_t* a, const uint64_t* b, uint64_t* out,
                    size_t count);
  // out[i] = bases[i] ^ exps[i] mod p
  void (*pow_batch)(const uint64_t* bases, const uint64_t* exps, uint64_t* out,
                    size_t count);
  // out[i] = sum_j coeffs[j] * points[i]^(degree - j), Horner order
  // (coeffs[0] is the leading coefficient).
  void (*horner_batch)(const uint64_t* coeffs, size_t ncoeffs,
                       const uint64_t* points, uint64_t* out, size_t npoints);
};

const Ops& scalar_ops();
#if DENSESTREAM_HAVE_AVX2
const Ops& avx2_ops();
bool cpu_has_avx2();
#endif

// Selected at first use: AVX2 when the CPU supports it, overridable with
// DENSESTREAM_KERNEL=scalar|avx2.
const Ops& ops();

}  // namespace densestream::kern
