#pragma once

// Univariate statistics applied to projected distances.
//
// All comparisons are non-strict (<=), exactly as the ECDF and indicator
// definitions read, so tied distances need no special casing.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mvproj/core.hpp"

namespace mvproj {

enum class TestId { KS, CVM, HoeffdingD, ThasSum, KruskalWallis };

std::string_view name(TestId test);
TestId parse_test(std::string_view text);
bool is_two_sample_test(TestId test);
bool is_independence_test(TestId test);

/// Range a statistic can take for a given test: [lower, upper].
struct StatisticBounds {
  double lower;
  double upper;
};
StatisticBounds bounds(TestId test);

struct UnivariateStatistic {
  double value = 0.0;
  TestId test = TestId::KS;
  std::size_t n_effective = 0;
};

/// Pooled sample sorted once, so that statistics of many label
/// assignments can be evaluated in O(N) each.
///
/// `row_ids[k]` names the dataset row that produced distance k; label
/// spans passed to the evaluators are indexed by those row ids. When
/// row_ids is empty the identity map is used.
class RankedSample {
 public:
  explicit RankedSample(std::span<const double> d, std::span<const std::uint32_t> row_ids = {});

  std::size_t size() const noexcept { return sorted_rows_.size(); }

  /// sup over pooled points of |ECDF_1 - ECDF_2|. Labels must be 1 or 2,
  /// both present; otherwise NotTwoGroups.
  double ks(std::span<const int> labels) const;

  /// (N1 N2 / N^2) * sum over pooled points of (ECDF_1 - ECDF_2)^2.
  double cvm(std::span<const int> labels) const;

  /// Kruskal-Wallis H with mid-ranks (no tie correction); labels in
  /// 1..num_groups, at least two groups present.
  double kruskal_wallis(std::span<const int> labels, int num_groups) const;

 private:
  std::vector<std::uint32_t> sorted_rows_;  // row id at each sorted position
  std::vector<std::uint32_t> block_end_;    // one past the last position of each tie block
};

double ks_two_sample(std::span<const double> d, std::span<const int> labels);
double cvm_two_sample(std::span<const double> d, std::span<const int> labels);
double kruskal_wallis(std::span<const double> d, std::span<const int> labels, int num_groups);

UnivariateStatistic ks_two_sample(const ProjectedSample& proj);
UnivariateStatistic cvm_two_sample(const ProjectedSample& proj);
UnivariateStatistic kruskal_wallis(const ProjectedSample& proj);

/// Per-point counts over the other n - 1 points, all comparisons <=:
/// le_x[i] = #{j != i : x_j <= x_i}, le_y likewise, le_both requires both.
/// O(n log n).
struct DominanceCounts {
  std::vector<std::uint32_t> le_x;
  std::vector<std::uint32_t> le_y;
  std::vector<std::uint32_t> le_both;
};
DominanceCounts dominance_counts(std::span<const double> x, std::span<const double> y);

/// Integer numerator of Hoeffding's D: the sum over ordered 5-tuples of
/// distinct indices of the order-5 kernel
///   (1/4) psi(x1;x2,x3) psi(x1;x4,x5) psi(y1;y2,y3) psi(y1;y4,y5),
///   psi(a;b,c) = I(b <= a) - I(c <= a).
/// Computed in O(n log n) from the 2x2 table each point induces on the
/// others. For data without ties it equals the classical rank form
/// A - 2(n-2)B + (n-2)(n-3)C.
__int128 hoeffding_numerator(std::span<const double> x, std::span<const double> y);

/// Hoeffding's D scaled by 30 (the Hmisc convention): 30 * numerator /
/// (n(n-1)(n-2)(n-3)(n-4)), within [-0.5, 1]; 1 for a perfectly monotone
/// sample. Requires n >= 5 (TooFewPoints).
double hoeffding_d(std::span<const double> x, std::span<const double> y);
UnivariateStatistic hoeffding_d(const ProjectedSample& proj);

/// Pearson chi-square score n(ad - bc)^2 / ((a+b)(c+d)(a+c)(b+d)) for the
/// table [[a, b], [c, d]]; 0 when any margin is empty.
double pearson_2x2(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

/// Thas-Ottoy statistic: every sample point j splits the plane at
/// (x_j, y_j); the remaining n - 1 points fill the 2x2 table of
/// I(x_k <= x_j), I(y_k <= y_j); the Pearson scores are summed over j.
/// O(n log n). Requires n >= min_points; a leave-one-out projection
/// accepts n = 2 since its center is the third point.
double thas_sum(std::span<const double> x, std::span<const double> y, std::size_t min_points = 3);
UnivariateStatistic thas_sum(const ProjectedSample& proj);

UnivariateStatistic evaluate(TestId test, const ProjectedSample& proj);

/// Adds seeded uniform noise of relative magnitude 1e-9 (of the largest
/// absolute value) to break ties. Off by default in the pipeline.
std::vector<double> jitter(std::span<const double> d, std::uint64_t seed);

}  // namespace mvproj
