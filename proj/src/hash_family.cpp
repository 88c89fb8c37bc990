#include "densestream/hash_family.hpp"

#include "densestream/rng.hpp"

namespace densestream {

HashFamily::HashFamily(uint64_t seed, uint64_t range, int wise, HashMode mode)
    : seed_(seed), range_(range ? range : 1) {
  if (mode == HashMode::Auto)
    mode = wise <= kMaxPolynomialWise ? HashMode::Polynomial
                                      : HashMode::SeededPseudorandom;
  polynomial_ = mode == HashMode::Polynomial;
  if (polynomial_) {
    if (wise < 1) wise = 1;
    if (wise > kMaxPolynomialWise) wise = kMaxPolynomialWise;
    coeffs_.resize(wise);
    Rng rng(seed, 0x9051ull);
    for (auto& c : coeffs_) c = rng.below(kern::kMersenne61);
  }
}

uint64_t HashFamily::operator()(uint64_t key) const {
  if (!polynomial_) return mix64(seed_, key) % range_;
  uint64_t x = key % kern::kMersenne61;
  uint64_t acc = coeffs_[0];
  for (size_t j = 1; j < coeffs_.size(); ++j)
    acc = kern::add61(kern::mul61(acc, x), coeffs_[j]);
  return acc % range_;
}

void HashFamily::eval_batch(const uint64_t* keys, uint64_t* out,
                            size_t count) const {
  if (!polynomial_) {
    for (size_t i = 0; i < count; ++i) out[i] = mix64(seed_, keys[i]) % range_;
    return;
  }
  kern::ops().horner_batch(coeffs_.data(), coeffs_.size(), keys, out, count);
  for (size_t i = 0; i < count; ++i) out[i] %= range_;
}

}  // namespace densestream
