#include "gk/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace gk::kernels {

namespace {

// Products go through uint64 so overflow wraps instead of being UB; the
// SIMD lanes wrap the same way.
inline std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) *
                                   static_cast<std::uint64_t>(b));
}

inline std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) +
                                   static_cast<std::uint64_t>(b));
}

void matmul_scalar(const std::int64_t* a, const std::int64_t* b, std::int64_t* c,
                   std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const std::int64_t ail = a[i * k + l];
      if (ail == 0) continue;
      const std::int64_t* brow = b + l * n;
      std::int64_t* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) {
        crow[j] = wrap_add(crow[j], wrap_mul(ail, brow[j]));
      }
    }
  }
}

void axpy_scalar(std::int64_t* dst, const std::int64_t* src, std::int64_t scale,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = wrap_add(dst[i], wrap_mul(scale, src[i]));
  }
}

const Ops kScalar{matmul_scalar, axpy_scalar, "scalar"};

}  // namespace

const Ops& scalar_ops() { return kScalar; }

const Ops& active() {
  static const Ops* selected = [] {
    const char* forced = std::getenv("GK_KERNEL");
    if (forced != nullptr) {
      if (std::strcmp(forced, "scalar") == 0) return &kScalar;
      if (std::strcmp(forced, "avx2") == 0 && avx2_ops() != nullptr) return avx2_ops();
    }
    if (const Ops* simd = avx2_ops()) return simd;
    return &kScalar;
  }();
  return *selected;
}

}  // namespace gk::kernels
