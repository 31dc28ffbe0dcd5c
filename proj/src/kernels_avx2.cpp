// AVX2 variants of the integer-matrix inner loops. Compiled with -mavx2 in
// its own translation unit; kernels.cpp selects it at runtime only when the
// CPU reports AVX2, so the rest of the binary stays baseline.

#include "gk/kernels.hpp"

#if defined(GK_HAVE_AVX2)

#include <immintrin.h>

namespace gk::kernels {

namespace {

// 64x64 -> low 64 bit lane-wise multiply. AVX2 has no 64-bit mullo, so the
// product is assembled from 32-bit halves:
//   lo(a)*lo(b) + ((lo(a)*hi(b) + hi(a)*lo(b)) << 32)
inline __m256i mullo_epi64(__m256i a, __m256i b) {
  __m256i bswap = _mm256_shuffle_epi32(b, 0xB1);
  __m256i prodlh = _mm256_mullo_epi32(a, bswap);
  __m256i zero = _mm256_setzero_si256();
  __m256i prodlh2 = _mm256_hadd_epi32(prodlh, zero);
  __m256i prodlh3 = _mm256_shuffle_epi32(prodlh2, 0x73);
  __m256i prodll = _mm256_mul_epu32(a, b);
  return _mm256_add_epi64(prodll, prodlh3);
}

void matmul_avx2(const std::int64_t* a, const std::int64_t* b, std::int64_t* c,
                 std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const std::int64_t ail = a[i * k + l];
      if (ail == 0) continue;
      const __m256i va = _mm256_set1_epi64x(ail);
      const std::int64_t* brow = b + l * n;
      std::int64_t* crow = c + i * n;
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(brow + j));
        __m256i vc = _mm256_loadu_si256(reinterpret_cast<__m256i*>(crow + j));
        vc = _mm256_add_epi64(vc, mullo_epi64(va, vb));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(crow + j), vc);
      }
      for (; j < n; ++j) {
        crow[j] = static_cast<std::int64_t>(
            static_cast<std::uint64_t>(crow[j]) +
            static_cast<std::uint64_t>(ail) * static_cast<std::uint64_t>(brow[j]));
      }
    }
  }
}

void axpy_avx2(std::int64_t* dst, const std::int64_t* src, std::int64_t scale,
               std::size_t n) {
  const __m256i vs = _mm256_set1_epi64x(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
    d = _mm256_add_epi64(d, mullo_epi64(vs, v));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), d);
  }
  for (; i < n; ++i) {
    dst[i] = static_cast<std::int64_t>(
        static_cast<std::uint64_t>(dst[i]) +
        static_cast<std::uint64_t>(scale) * static_cast<std::uint64_t>(src[i]));
  }
}

const Ops kAvx2{matmul_avx2, axpy_avx2, "avx2"};

}  // namespace

const Ops* avx2_ops() {
#if defined(__GNUC__) || defined(__clang__)
  static const bool supported = __builtin_cpu_supports("avx2");
#else
  static const bool supported = false;
#endif
  return supported ? &kAvx2 : nullptr;
}

}  // namespace gk::kernels

#else

namespace gk::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace gk::kernels

#endif
