#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "mvproj/random.hpp"
#include "mvproj/simd/distance_kernels.hpp"
#include "oracles.hpp"

using namespace mvproj;

namespace {

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST(Simd, ScalarAlwaysAvailable) {
  const auto isas = simd::available_isas();
  ASSERT_FALSE(isas.empty());
  EXPECT_EQ(isas.front(), simd::Isa::Scalar);
}

TEST(Simd, EveryVariantBitIdenticalToScalar) {
  Rng rng(1);
  // Row counts cover empty input, pure tails and every tail length.
  for (std::size_t rows : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 12u, 15u, 16u, 17u, 33u, 100u, 1001u}) {
    for (std::size_t cols : {1u, 2u, 3u, 7u, 16u}) {
      const Matrix m = oracle::normal_matrix(rng, rows, cols);
      const auto z = oracle::normals(rng, cols);
      std::vector<double> ref(rows), got(rows);
      simd::distances(simd::Isa::Scalar, m.values().data(), rows, cols, z.data(), ref.data());
      for (auto isa : simd::available_isas()) {
        std::fill(got.begin(), got.end(), -1.0);
        simd::distances(isa, m.values().data(), rows, cols, z.data(), got.data());
        EXPECT_TRUE(bits_equal(ref, got)) << simd::name(isa) << " rows=" << rows << " cols=" << cols;
      }
    }
  }
}

TEST(Simd, ExtremeMagnitudes) {
  const std::vector<double> col{1e-300, -1e300, 0.0, -0.0, 1e150, 3.0, 4.0, 5e-324, 7.0};
  const std::vector<double> z{0.5};
  std::vector<double> ref(col.size()), got(col.size());
  simd::distances(simd::Isa::Scalar, col.data(), col.size(), 1, z.data(), ref.data());
  for (auto isa : simd::available_isas()) {
    simd::distances(isa, col.data(), col.size(), 1, z.data(), got.data());
    EXPECT_TRUE(bits_equal(ref, got)) << simd::name(isa);
  }
}

TEST(Simd, ScalarMatchesDefinition) {
  const std::vector<double> cols{3, 0, 4, 0};  // rows (3,4) and (0,0)
  const std::vector<double> z{0, 0};
  std::vector<double> out(2);
  simd::distances(simd::Isa::Scalar, cols.data(), 2, 2, z.data(), out.data());
  EXPECT_EQ(out, (std::vector<double>{5.0, 0.0}));
}

TEST(Simd, ActiveIsaCanBeForced) {
  const auto saved = simd::active_isa();
  simd::set_active_isa(simd::Isa::Scalar);
  EXPECT_EQ(simd::active_isa(), simd::Isa::Scalar);
  simd::set_active_isa(saved);
  EXPECT_EQ(simd::active_isa(), saved);
}

TEST(Simd, Names) {
  EXPECT_EQ(simd::name(simd::Isa::Scalar), "scalar");
  EXPECT_EQ(simd::name(simd::Isa::Avx2), "avx2");
  EXPECT_EQ(simd::name(simd::Isa::Neon), "neon");
}
