#include <immintrin.h>

#include "mvproj/simd/distance_kernels.hpp"

namespace mvproj::simd::detail {

// Four observations per lane group; the coordinate loop stays sequential so
// each lane reproduces the scalar accumulation order.
void distances_avx2(const double* cols, std::size_t rows, std::size_t ncols,
                    const double* z, double* out) {
  std::size_t i = 0;
  for (; i + 8 <= rows; i += 8) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    for (std::size_t c = 0; c < ncols; ++c) {
      const double* col = cols + c * rows + i;
      const __m256d zc = _mm256_set1_pd(z[c]);
      const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(col), zc);
      const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(col + 4), zc);
      acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
      acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
    }
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(acc0));
    _mm256_storeu_pd(out + i + 4, _mm256_sqrt_pd(acc1));
  }
  for (; i + 4 <= rows; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t c = 0; c < ncols; ++c) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(cols + c * rows + i), _mm256_set1_pd(z[c]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(acc));
  }
  distances_scalar(cols, rows, ncols, z, out, i);
}

}  // namespace mvproj::simd::detail
