#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mvproj/pooling.hpp"
#include "mvproj/random.hpp"
#include "mvproj/core.hpp"

using namespace mvproj;

namespace {

std::vector<double> random_pvals(Rng& rng, std::size_t m) {
  std::vector<double> p(m);
  for (double& v : p) v = (1.0 + static_cast<double>(rng.below(1000))) / 1000.0;
  return p;
}

ErrorCode code_of(void (*f)()) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

}  // namespace

TEST(Combiners, StatisticExamples) {
  const std::vector<double> s{0.2, 0.5, 0.1};
  EXPECT_EQ(max_stat(s), 0.5);
  EXPECT_EQ(max_stat(std::vector<double>{0.3}), 0.3);
  EXPECT_DOUBLE_EQ(sum_stat(s), 0.8);
  EXPECT_DOUBLE_EQ(mean_stat(s), 0.8 / 3.0);
  EXPECT_EQ(sum_stat(std::vector<double>{0, 0, 0}), 0.0);
}

TEST(Combiners, PValueExamples) {
  const std::vector<double> p{0.01, 0.5, 0.9};
  EXPECT_EQ(min_p(p), 0.01);
  EXPECT_EQ(max_p(p), 0.9);
  EXPECT_EQ(min_p(std::vector<double>{0.3}), 0.3);
  EXPECT_EQ(max_p(std::vector<double>{0.3}), 0.3);
}

TEST(Combiners, Fisher) {
  EXPECT_EQ(fisher_log(std::vector<double>{1, 1}), 0.0);
  EXPECT_NEAR(fisher_log(std::vector<double>{std::exp(-1.0), std::exp(-2.0)}), 6.0, 1e-12);
  EXPECT_NEAR(fisher_log(std::vector<double>{0.5}), 1.3862943611198906, 1e-12);
}

TEST(Combiners, Bonferroni) {
  EXPECT_DOUBLE_EQ(bonferroni_global(std::vector<double>{0.01, 0.5, 0.9}), 0.03);
  EXPECT_EQ(bonferroni_global(std::vector<double>{0.5, 0.9}), 1.0);
  EXPECT_EQ(bonferroni_global(std::vector<double>{0.37}), 0.37);
}

TEST(Combiners, Hommel) {
  EXPECT_EQ(hommel_global(std::vector<double>{0.04}), 0.04);
  EXPECT_DOUBLE_EQ(hommel_global(std::vector<double>{0.01, 0.5}), 0.03);
  EXPECT_DOUBLE_EQ(hommel_global(std::vector<double>{0.5, 0.01}), 0.03);
  for (std::size_t m : {2u, 5u, 10u}) {
    const std::vector<double> equal(m, 0.002);
    EXPECT_NEAR(hommel_global(equal), harmonic_number(m) * 0.002, 1e-15);
  }
  EXPECT_EQ(harmonic_number(1), 1.0);
  EXPECT_DOUBLE_EQ(harmonic_number(2), 1.5);
}

TEST(Combiners, HommelBoundedByBonferroni) {
  Rng rng(1);
  for (int t = 0; t < 500; ++t) {
    const std::size_t m = 1 + rng.below(20);
    const auto p = random_pvals(rng, m);
    const double h = hommel_global(p), b = bonferroni_global(p), c = harmonic_number(m);
    EXPECT_LE(h, c * b * (1 + 1e-12));
    EXPECT_LE(h, m * c * min_p(p) * (1 + 1e-12));
    EXPECT_GT(h, 0.0);
    EXPECT_LE(h, 1.0);
  }
}

TEST(Combiners, PermutationInvariant) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_pvals(rng, 1 + rng.below(15));
    auto q = p;
    rng.shuffle(std::span<double>(q));
    for (PoolingRule r : {PoolingRule::MaxStat, PoolingRule::MinP, PoolingRule::SumStat, PoolingRule::FisherLogP,
                          PoolingRule::MaxP, PoolingRule::BonferroniGlobal, PoolingRule::HommelGlobal,
                          PoolingRule::MeanStat}) {
      EXPECT_NEAR(pool(r, p, p), pool(r, q, q), 1e-12) << name(r);
    }
  }
}

TEST(Combiners, GlobalTestsMonotone) {
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    auto p = random_pvals(rng, 1 + rng.below(10));
    const double b0 = bonferroni_global(p), h0 = hommel_global(p);
    const std::size_t i = rng.below(p.size());
    p[i] = std::min(1.0, p[i] + 0.1 * rng.uniform());
    EXPECT_GE(bonferroni_global(p), b0);
    EXPECT_GE(hommel_global(p), h0);
  }
}

TEST(Combiners, Errors) {
  EXPECT_EQ(code_of([] { max_stat(std::vector<double>{}); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code_of([] { sum_stat(std::vector<double>{}); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code_of([] { min_p(std::vector<double>{}); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code_of([] { fisher_log(std::vector<double>{0.5, 0.0}); }), ErrorCode::OutOfRangeP);
  EXPECT_EQ(code_of([] { bonferroni_global(std::vector<double>{1.2}); }), ErrorCode::OutOfRangeP);
  EXPECT_EQ(code_of([] { hommel_global(std::vector<double>{-0.1}); }), ErrorCode::OutOfRangeP);
  EXPECT_EQ(code_of([] { max_p(std::vector<double>{std::nan("")}); }), ErrorCode::OutOfRangeP);
}

TEST(Rules, NamesAndOrientation) {
  for (PoolingRule r : {PoolingRule::MaxStat, PoolingRule::MinP, PoolingRule::SumStat, PoolingRule::FisherLogP,
                        PoolingRule::MaxP, PoolingRule::BonferroniGlobal, PoolingRule::HommelGlobal,
                        PoolingRule::MeanStat}) {
    EXPECT_EQ(parse_pooling(name(r)), r);
  }
  EXPECT_THROW(parse_pooling("stouffer"), Error);
  EXPECT_TRUE(is_global_null(PoolingRule::HommelGlobal));
  EXPECT_FALSE(is_global_null(PoolingRule::FisherLogP));
  EXPECT_FALSE(larger_is_extreme(PoolingRule::MinP));
  EXPECT_FALSE(larger_is_extreme(PoolingRule::MaxP));
  EXPECT_TRUE(larger_is_extreme(PoolingRule::FisherLogP));
}
