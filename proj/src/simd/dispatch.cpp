#include <atomic>
#include <cstdlib>
#include <string>

#include "mvproj/core.hpp"
#include "mvproj/simd/distance_kernels.hpp"

namespace mvproj::simd {

namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(MVPROJ_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(MVPROJ_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect() {
  if (const char* env = std::getenv("MVPROJ_SIMD")) {
    const std::string want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == name(isa) && cpu_supports(isa)) return isa;
    }
  }
  if (cpu_supports(Isa::Avx2)) return Isa::Avx2;
  if (cpu_supports(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!cpu_supports(isa)) {
    throw Error(ErrorCode::InvalidConfig, std::string("SIMD variant not available: ") +
                                              std::string(name(isa)));
  }
  active().store(isa, std::memory_order_relaxed);
}

void distances(Isa isa, const double* cols, std::size_t rows, std::size_t ncols,
               const double* z, double* out) {
  switch (isa) {
#if defined(MVPROJ_HAVE_AVX2)
    case Isa::Avx2:
      detail::distances_avx2(cols, rows, ncols, z, out);
      return;
#endif
#if defined(MVPROJ_HAVE_NEON)
    case Isa::Neon:
      detail::distances_neon(cols, rows, ncols, z, out);
      return;
#endif
    default:
      detail::distances_scalar(cols, rows, ncols, z, out, 0);
      return;
  }
}

}  // namespace mvproj::simd
