#include <arm_neon.h>

#include "mvproj/simd/distance_kernels.hpp"

namespace mvproj::simd::detail {

void distances_neon(const double* cols, std::size_t rows, std::size_t ncols,
                    const double* z, double* out) {
  std::size_t i = 0;
  for (; i + 2 <= rows; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t c = 0; c < ncols; ++c) {
      const float64x2_t d = vsubq_f64(vld1q_f64(cols + c * rows + i), vdupq_n_f64(z[c]));
      // vmulq + vaddq rather than vfmaq: must round like the scalar path.
      acc = vaddq_f64(acc, vmulq_f64(d, d));
    }
    vst1q_f64(out + i, vsqrtq_f64(acc));
  }
  distances_scalar(cols, rows, ncols, z, out, i);
}

}  // namespace mvproj::simd::detail
