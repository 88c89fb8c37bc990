#include "densestream/kernels/mersenne61.hpp"

#if DENSESTREAM_HAVE_AVX2

#include <immintrin.h>

namespace densestream::kern {

namespace {

// Lane-wise a*b mod (2^61-1) for four 64-bit lanes, inputs < 2^61.
// 64x64 -> 128 is assembled from 32-bit partial products, then folded with
// 2^64 === 2^3 (mod p).
inline __m256i mul61_vec(__m256i a, __m256i b) {
  const __m256i lo32 = _mm256_set1_epi64x(0xffffffffll);
  const __m256i p = _mm256_set1_epi64x(static_cast<long long>(kMersenne61));

  __m256i a0 = _mm256_and_si256(a, lo32);
  __m256i a1 = _mm256_srli_epi64(a, 32);
  __m256i b0 = _mm256_and_si256(b, lo32);
  __m256i b1 = _mm256_srli_epi64(b, 32);

  __m256i t = _mm256_mul_epu32(a0, b0);
  __m256i u = _mm256_add_epi64(_mm256_mul_epu32(a1, b0),
                               _mm256_srli_epi64(t, 32));
  __m256i v = _mm256_add_epi64(_mm256_mul_epu32(a0, b1),
                               _mm256_and_si256(u, lo32));
  __m256i hi = _mm256_add_epi64(
      _mm256_mul_epu32(a1, b1),
      _mm256_add_epi64(_mm256_srli_epi64(u, 32), _mm256_srli_epi64(v, 32)));
  __m256i lo = _mm256_or_si256(_mm256_slli_epi64(v, 32),
                               _mm256_and_si256(t, lo32));

  // prod = hi*2^64 + lo === (hi<<3 | lo>>61) + (lo & p)
  __m256i fold = _mm256_or_si256(_mm256_slli_epi64(hi, 3),
                                 _mm256_srli_epi64(lo, 61));
  __m256i r = _mm256_add_epi64(fold, _mm256_and_si256(lo, p));
  // r < 2^62: one more fold plus a conditional subtract normalizes.
  r = _mm256_add_epi64(_mm256_and_si256(r, p), _mm256_srli_epi64(r, 61));
  __m256i ge = _mm256_or_si256(_mm256_cmpgt_epi64(r, p),
                               _mm256_cmpeq_epi64(r, p));
  return _mm256_sub_epi64(r, _mm256_and_si256(ge, p));
}

void mul_batch_avx2(const uint64_t* a, const uint64_t* b, uint64_t* out,
                    size_t count) {
  size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), mul61_vec(va, vb));
  }
  for (; i < count; ++i) out[i] = mul61(a[i], b[i]);
}

void pow_batch_avx2(const uint64_t* bases, const uint64_t* exps, uint64_t* out,
                    size_t count) {
  const __m256i one = _mm256_set1_epi64x(1);
  size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bases + i));
    __m256i e = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(exps + i));
    uint64_t emax = exps[i] | exps[i + 1] | exps[i + 2] | exps[i + 3];
    __m256i r = one;
    while (emax) {
      __m256i bit = _mm256_and_si256(e, one);
      __m256i mask = _mm256_cmpeq_epi64(bit, one);
      __m256i mult = mul61_vec(r, b);
      r = _mm256_blendv_epi8(r, mult, mask);
      b = mul61_vec(b, b);
      e = _mm256_srli_epi64(e, 1);
      emax >>= 1;
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), r);
  }
  for (; i < count; ++i) out[i] = pow61(bases[i], exps[i]);
}

void horner_batch_avx2(const uint64_t* coeffs, size_t ncoeffs,
                       const uint64_t* points, uint64_t* out, size_t npoints) {
  size_t i = 0;
  for (; i + 4 <= npoints; i += 4) {
    uint64_t xr[4];
    for (int l = 0; l < 4; ++l) xr[l] = points[i + l] % kMersenne61;
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(xr));
    __m256i acc = _mm256_set1_epi64x(
        ncoeffs ? static_cast<long long>(coeffs[0]) : 0);
    const __m256i p = _mm256_set1_epi64x(static_cast<long long>(kMersenne61));
    for (size_t j = 1; j < ncoeffs; ++j) {
      acc = mul61_vec(acc, x);
      acc = _mm256_add_epi64(acc, _mm256_set1_epi64x(
                                      static_cast<long long>(coeffs[j])));
      __m256i ge = _mm256_or_si256(_mm256_cmpgt_epi64(acc, p),
                                   _mm256_cmpeq_epi64(acc, p));
      acc = _mm256_sub_epi64(acc, _mm256_and_si256(ge, p));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), acc);
  }
  for (; i < npoints; ++i) {
    uint64_t x = points[i] % kMersenne61;
    uint64_t acc = ncoeffs ? coeffs[0] : 0;
    for (size_t j = 1; j < ncoeffs; ++j) acc = add61(mul61(acc, x), coeffs[j]);
    out[i] = acc;
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{"avx2", mul_batch_avx2, pow_batch_avx2,
                       horner_batch_avx2};
  return ops;
}

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

}  // namespace densestream::kern

#endif  // DENSESTREAM_HAVE_AVX2
