// AVX2 variant of the batched orbit step. Four lanes per vector; branch
// selection mirrors the reference kernel's "last breakpoint <= x wins"
// cascade with compare + blend. Multiply and add stay separate instructions
// so results match the scalar kernel bit for bit.

#include "pcn/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

// Vectors of __m256d trip -Wignored-attributes (the alignment attribute is
// not part of the template argument's type); the code is valid C++17, the
// allocator returns 32-byte aligned storage.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wignored-attributes"

namespace pcn::kernels {

void step_batch_avx2(const BranchTable& t, const double* shift, double* x,
                     std::size_t n, int steps) {
  const int k = t.k;
  std::vector<__m256d> vslope(static_cast<std::size_t>(k));
  std::vector<__m256d> vicpt(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    vslope[static_cast<std::size_t>(i)] = _mm256_set1_pd(t.slope[static_cast<std::size_t>(i)]);
    vicpt[static_cast<std::size_t>(i)] = _mm256_set1_pd(t.intercept[static_cast<std::size_t>(i)]);
  }

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vsh = _mm256_loadu_pd(shift + i);
    std::vector<__m256d> vbrk(static_cast<std::size_t>(k - 1));
    for (int j = 0; j + 1 < k; ++j)
      vbrk[static_cast<std::size_t>(j)] =
          _mm256_add_pd(_mm256_set1_pd(t.brk[static_cast<std::size_t>(j)]), vsh);
    for (int s = 0; s < steps; ++s) {
      __m256d vs = vslope[0];
      __m256d vb = vicpt[0];
      for (int j = 0; j + 1 < k; ++j) {
        const __m256d m = _mm256_cmp_pd(vx, vbrk[static_cast<std::size_t>(j)], _CMP_GE_OQ);
        vs = _mm256_blendv_pd(vs, vslope[static_cast<std::size_t>(j + 1)], m);
        vb = _mm256_blendv_pd(vb, vicpt[static_cast<std::size_t>(j + 1)], m);
      }
      vx = _mm256_add_pd(_mm256_mul_pd(vs, vx), vb);
    }
    _mm256_storeu_pd(x + i, vx);
  }
  if (i < n) step_batch_ref(t, shift + i, x + i, n - i, steps);
}

}  // namespace pcn::kernels

#pragma GCC diagnostic pop

#endif
