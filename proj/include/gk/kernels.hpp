#pragma once

#include <cstddef>
#include <cstdint>

// Arithmetic inner loops of the integer-matrix layer. A scalar reference
// implementation always exists; on x86-64 an AVX2 variant is selected at
// runtime when the CPU supports it. Both compute identical results
// (wraparound on int64 overflow), which the tests assert.
namespace gk::kernels {

struct Ops {
  // c (m x n) = a (m x k) * b (k x n), row-major, c preinitialized to 0.
  void (*matmul)(const std::int64_t* a, const std::int64_t* b, std::int64_t* c,
                 std::size_t m, std::size_t k, std::size_t n);
  // dst[i] += scale * src[i] for i in [0, n)
  void (*axpy)(std::int64_t* dst, const std::int64_t* src, std::int64_t scale,
               std::size_t n);
  const char* name;
};

const Ops& scalar_ops();

// AVX2 variant, or nullptr when not compiled in / not supported by the CPU.
const Ops* avx2_ops();

// Selected implementation. Honors GK_KERNEL=scalar|avx2 in the environment;
// otherwise picks the widest supported variant.
const Ops& active();

}  // namespace gk::kernels
