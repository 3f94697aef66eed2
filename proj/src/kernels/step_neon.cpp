// NEON variant of the batched orbit step, two lanes per vector. Same
// structure as the AVX2 kernel; vmulq/vaddq keep multiply and add separate
// so results stay bit-identical to the scalar reference.

#include "pcn/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace pcn::kernels {

void step_batch_neon(const BranchTable& t, const double* shift, double* x,
                     std::size_t n, int steps) {
  const int k = t.k;
  std::vector<float64x2_t> vslope(static_cast<std::size_t>(k));
  std::vector<float64x2_t> vicpt(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    vslope[static_cast<std::size_t>(i)] = vdupq_n_f64(t.slope[static_cast<std::size_t>(i)]);
    vicpt[static_cast<std::size_t>(i)] = vdupq_n_f64(t.intercept[static_cast<std::size_t>(i)]);
  }

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vsh = vld1q_f64(shift + i);
    std::vector<float64x2_t> vbrk(static_cast<std::size_t>(k - 1));
    for (int j = 0; j + 1 < k; ++j)
      vbrk[static_cast<std::size_t>(j)] =
          vaddq_f64(vdupq_n_f64(t.brk[static_cast<std::size_t>(j)]), vsh);
    for (int s = 0; s < steps; ++s) {
      float64x2_t vs = vslope[0];
      float64x2_t vb = vicpt[0];
      for (int j = 0; j + 1 < k; ++j) {
        const uint64x2_t m = vcgeq_f64(vx, vbrk[static_cast<std::size_t>(j)]);
        vs = vbslq_f64(m, vslope[static_cast<std::size_t>(j + 1)], vs);
        vb = vbslq_f64(m, vicpt[static_cast<std::size_t>(j + 1)], vb);
      }
      vx = vaddq_f64(vmulq_f64(vs, vx), vb);
    }
    vst1q_f64(x + i, vx);
  }
  if (i < n) step_batch_ref(t, shift + i, x + i, n - i, steps);
}

}  // namespace pcn::kernels

#endif
