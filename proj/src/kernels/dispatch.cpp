#include <cstdlib>
#include <cstring>

#include "densestream/kernels/mersenne61.hpp"

namespace densestream::kern {

namespace {

const Ops& select() {
  const char* env = std::getenv("DENSESTREAM_KERNEL");
  if (env && std::strcmp(env, "scalar") == 0) return scalar_ops();
#if DENSESTREAM_HAVE_AVX2
  if (env && std::strcmp(env, "avx2") == 0) return avx2_ops();
  if (!env && cpu_has_avx2()) return avx2_ops();
#endif
  return scalar_ops();
}

}  // namespace

const Ops& ops() {
  static const Ops& selected = select();
  return selected;
}

}  // namespace densestream::kern
