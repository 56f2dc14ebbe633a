#pragma once

// Euclidean distance kernels: out[i] = || row_i - z || for a column-major
// block. Each variant accumulates coordinates in the same order with the
// same IEEE operations (sub, mul, add, sqrt; no FMA), so every variant is
// bit-identical to the scalar reference.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace mvproj::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view name(Isa isa);

/// Variants compiled into this build and supported by the running CPU.
std::vector<Isa> available_isas();

/// The variant used by distances(). Chosen once from the CPU features; the
/// MVPROJ_SIMD environment variable (scalar|avx2|neon) overrides it.
Isa active_isa();
void set_active_isa(Isa isa);

/// cols points at ncols contiguous columns of length rows.
void distances(Isa isa, const double* cols, std::size_t rows, std::size_t ncols,
               const double* z, double* out);

inline void distances(const double* cols, std::size_t rows, std::size_t ncols,
                      const double* z, double* out) {
  distances(active_isa(), cols, rows, ncols, z, out);
}

namespace detail {
void distances_scalar(const double* cols, std::size_t rows, std::size_t ncols,
                      const double* z, double* out, std::size_t begin);
void distances_avx2(const double* cols, std::size_t rows, std::size_t ncols,
                    const double* z, double* out);
void distances_neon(const double* cols, std::size_t rows, std::size_t ncols,
                    const double* z, double* out);
}  // namespace detail

}  // namespace mvproj::simd
