#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mvproj/permutation.hpp"
#include "mvproj/reference.hpp"
#include "mvproj/univariate.hpp"
#include "oracles.hpp"

using namespace mvproj;

namespace {

PermutationPlan label_plan(std::size_t b, std::uint64_t seed, std::size_t threads = 1) {
  PermutationPlan plan;
  plan.mode = PermutationMode::LabelPermute;
  plan.permutations = b;
  plan.master_seed = seed;
  plan.threads = threads;
  return plan;
}

double mean_difference(const LabeledDataset& d) {
  double s1 = 0, s2 = 0, n1 = 0, n2 = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.labels()[i] == 1) {
      s1 += d.y()(i, 0);
      n1 += 1;
    } else {
      s2 += d.y()(i, 0);
      n2 += 1;
    }
  }
  return s1 / n1 - s2 / n2;
}

}  // namespace

TEST(PermutationPValue, ObservedAboveAllDraws) {
  // Group 1 holds the largest values, so the observed mean difference is
  // the unique maximum of the permutation distribution.
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 20; ++i) rows.push_back({static_cast<double>(i < 10 ? 100 + i : i)});
  const LabeledDataset data(Matrix::from_rows(rows), oracle::two_groups(10, 10), 2);
  const auto res = permutation_pvalue(mean_difference, data, label_plan(99, 1));
  for (double v : res.null_sample) ASSERT_LT(v, res.observed);
  EXPECT_DOUBLE_EQ(res.p_value, 1.0 / 100.0);
  EXPECT_EQ(res.null_sample.size(), 99u);
}

TEST(PermutationPValue, ConstantStatisticGivesOne) {
  const LabeledDataset data(Matrix::from_rows({{1}, {2}, {3}, {4}}), {1, 1, 2, 2}, 2);
  const auto res = permutation_pvalue([](const LabeledDataset&) { return 3.0; }, data, label_plan(50, 2));
  EXPECT_EQ(res.p_value, 1.0);
}

TEST(PermutationPValue, OnGridOfAddOneFractions) {
  Rng rng(3);
  const LabeledDataset data(oracle::normal_matrix(rng, 12, 2), oracle::two_groups(6, 6), 2);
  const auto res = permutation_pvalue(energy_stat, data, label_plan(199, 4));
  const double k = res.p_value * 200.0;
  EXPECT_NEAR(k, std::round(k), 1e-9);
  EXPECT_GE(k, 1.0);
}

TEST(ExactPValue, MatchesSeventyAssignmentEnumeration) {
  Rng rng(5);
  const LabeledDataset data(oracle::normal_matrix(rng, 8, 2), oracle::two_groups(4, 4), 2);
  const double observed = energy_stat(data);
  // Enumerate the 70 ways to choose group 1 by bit mask.
  int at_least = 0, total = 0;
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    std::vector<int> labels(8);
    for (int i = 0; i < 8; ++i) labels[i] = (mask >> i) & 1 ? 1 : 2;
    ++total;
    if (energy_stat(data.with_labels(labels)) >= observed) ++at_least;
  }
  ASSERT_EQ(total, 70);
  EXPECT_DOUBLE_EQ(exact_two_sample_pvalue(energy_stat, data), at_least / 70.0);
}

TEST(ExactPValue, TwoSingletonGroups) {
  const LabeledDataset data(Matrix::from_rows({{1}, {5}}), {1, 2}, 2);
  for (auto stat : {std::function<double(const LabeledDataset&)>(mean_difference),
                    std::function<double(const LabeledDataset&)>(energy_stat)}) {
    const double p = exact_two_sample_pvalue(stat, data);
    EXPECT_TRUE(p == 0.5 || p == 1.0) << p;
  }
}

TEST(ExactPValue, IdenticalGroupValues) {
  const LabeledDataset data(Matrix::from_rows({{2}, {2}, {2}, {2}, {2}}), {1, 1, 2, 2, 2}, 2);
  EXPECT_EQ(exact_two_sample_pvalue(energy_stat, data), 1.0);
}

TEST(ExactPValue, TooManyAssignments) {
  const LabeledDataset data(Matrix(30, 1), oracle::two_groups(15, 15), 2);
  try {
    exact_two_sample_pvalue(energy_stat, data);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyAssignments);
  }
}

TEST(ExactPValue, AgreesWithMonteCarlo) {
  Rng rng(6);
  const LabeledDataset data(oracle::normal_matrix(rng, 8, 1), oracle::two_groups(4, 4), 2);
  const double exact = exact_two_sample_pvalue(energy_stat, data);
  const double mc = permutation_pvalue(energy_stat, data, label_plan(10000, 7, 0)).p_value;
  const double se = std::sqrt(exact * (1 - exact) / 10000.0);
  EXPECT_LE(std::abs(mc - exact), 3 * se + 1.0 / 10001.0);
}

TEST(Plan, Validation) {
  const LabeledDataset data(Matrix(4, 1), {1, 1, 2, 2}, 2);
  auto plan = label_plan(0, 1);
  EXPECT_THROW(permutation_pvalue(energy_stat, data, plan), Error);
  plan = label_plan(10, 1);
  plan.mode = PermutationMode::PairPermute;
  try {
    permutation_pvalue(energy_stat, data, plan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPlan);
  }
  plan = label_plan(10, 1);
  plan.exact = true;
  plan.exact_cap = 5;
  EXPECT_THROW(permutation_pvalue(energy_stat, data, plan), Error);
}

TEST(Counting, AssignmentsAndPairings) {
  EXPECT_EQ(count_label_assignments(oracle::two_groups(4, 4), 1000), 70u);
  EXPECT_EQ(count_label_assignments(std::vector<int>{1, 2, 2, 3, 3, 3}, 1000), 60u);
  EXPECT_EQ(count_label_assignments(oracle::two_groups(20, 20), 1000), 1001u);
  EXPECT_EQ(count_pairings(5, 1000), 120u);
  EXPECT_EQ(count_pairings(30, 1000000), 1000001u);
}

TEST(Determinism, ThreadCountDoesNotMatter) {
  Rng rng(8);
  const LabeledDataset data(oracle::normal_matrix(rng, 30, 3), oracle::two_groups(12, 18), 2);
  const auto a = permutation_pvalue(energy_stat, data, label_plan(300, 9, 1));
  const auto b = permutation_pvalue(energy_stat, data, label_plan(300, 9, 4));
  EXPECT_EQ(a.p_value, b.p_value);
  EXPECT_EQ(a.null_sample, b.null_sample);
}

TEST(PairPermute, LeavesXUntouched) {
  Rng rng(10);
  const PairedDataset data(oracle::normal_matrix(rng, 10, 2), oracle::normal_matrix(rng, 10, 1));
  PermutationPlan plan;
  plan.mode = PermutationMode::PairPermute;
  plan.permutations = 50;
  plan.master_seed = 11;
  permutation_pvalue(
      [&](const PairedDataset& d) {
        EXPECT_EQ(d.x(), data.x());
        std::vector<double> y(d.y().column(0).begin(), d.y().column(0).end());
        auto sorted_y = y;
        std::sort(sorted_y.begin(), sorted_y.end());
        std::vector<double> original(data.y().column(0).begin(), data.y().column(0).end());
        std::sort(original.begin(), original.end());
        EXPECT_EQ(sorted_y, original);
        return 0.0;
      },
      data, plan);
}

TEST(PairPermute, ExactEnumeratesAllPairings) {
  const PairedDataset data(Matrix::from_rows({{1}, {2}, {3}, {4}}), Matrix::from_rows({{1}, {2}, {3}, {4}}));
  PermutationPlan plan;
  plan.mode = PermutationMode::PairPermute;
  plan.exact = true;
  // Identity pairing gives the unique maximum of sum x_i y_i.
  const auto res = permutation_pvalue(
      [](const PairedDataset& d) {
        double s = 0;
        for (std::size_t i = 0; i < d.size(); ++i) s += d.x()(i, 0) * d.y()(i, 0);
        return s;
      },
      data, plan);
  EXPECT_TRUE(res.exact);
  EXPECT_EQ(res.null_sample.size(), 24u);
  EXPECT_DOUBLE_EQ(res.p_value, 1.0 / 24.0);
}

TEST(Shuffle, PermutationDrawsAreUniform) {
  std::vector<int> counts(6, 0);
  for (std::uint64_t b = 1; b <= 60000; ++b) {
    const auto p = random_permutation(3, permutation_seed(123, b));
    counts[static_cast<std::size_t>(p[0] * 2 + (p[1] > p[2] ? 1 : 0))]++;
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

TEST(RowPValues, RowZeroMatchesColumnPValue) {
  Rng rng(12);
  NullTable t;
  t.width = 3;
  t.draws = 40;
  for (std::size_t i = 0; i < 41 * 3; ++i) t.values.push_back(static_cast<double>(rng.below(6)));
  const auto p = row_p_values(t);
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_DOUBLE_EQ(p.at(0, c), column_p_value(t, c));
    for (std::size_t r = 0; r <= t.draws; ++r) {
      std::size_t count = 0;
      for (std::size_t s = 0; s <= t.draws; ++s) count += t.at(s, c) >= t.at(r, c);
      EXPECT_DOUBLE_EQ(p.at(r, c), count / 41.0);
    }
  }
  t.exact = true;
  const auto pe = row_p_values(t);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_DOUBLE_EQ(pe.at(0, c), column_p_value(t, c));
}

TEST(ColumnPValue, LowerTail) {
  NullTable t;
  t.width = 1;
  t.draws = 3;
  t.values = {0.1, 0.5, 0.05, 0.1};
  EXPECT_DOUBLE_EQ(column_p_value(t, 0, false), 3.0 / 4.0);
  t.values = {0.1, 0.5, 0.05, 0.2};
  EXPECT_DOUBLE_EQ(column_p_value(t, 0, true), 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(column_p_value(t, 0, false), 2.0 / 4.0);
}
