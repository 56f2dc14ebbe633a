#include <cmath>

#include "mvproj/simd/distance_kernels.hpp"

namespace mvproj::simd::detail {

void distances_scalar(const double* cols, std::size_t rows, std::size_t ncols,
                      const double* z, double* out, std::size_t begin) {
  for (std::size_t i = begin; i < rows; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < ncols; ++c) {
      const double diff = cols[c * rows + i] - z[c];
      acc = acc + diff * diff;
    }
    out[i] = std::sqrt(acc);
  }
}

}  // namespace mvproj::simd::detail
