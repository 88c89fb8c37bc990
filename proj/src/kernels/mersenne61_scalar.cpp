#include "densestream/kernels/mersenne61.hpp"

namespace densestream::kern {

namespace {

void mul_batch_scalar(const uint64_t* a, const uint64_t* b, uint64_t* out,
                      size_t count) {
  for (size_t i = 0; i < count; ++i) out[i] = mul61(a[i], b[i]);
}

void pow_batch_scalar(const uint64_t* bases, const uint64_t* exps,
                      uint64_t* out, size_t count) {
  for (size_t i = 0; i < count; ++i) out[i] = pow61(bases[i], exps[i]);
}

void horner_batch_scalar(const uint64_t* coeffs, size_t ncoeffs,
                         const uint64_t* points, uint64_t* out,
                         size_t npoints) {
  for (size_t i = 0; i < npoints; ++i) {
    uint64_t x = points[i] % kMersenne61;
    uint64_t acc = ncoeffs ? coeffs[0] : 0;
    for (size_t j = 1; j < ncoeffs; ++j) acc = add61(mul61(acc, x), coeffs[j]);
    out[i] = acc;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", mul_batch_scalar, pow_batch_scalar,
                       horner_batch_scalar};
  return ops;
}

}  // namespace densestream::kern
