#pragma once

// Classical multivariate statistics coded straight from their definitions.
// They serve as algebraic oracles for the projection framework: the energy
// statistic decomposes into per-observation scores, and the HHG statistic
// equals the sum of Thas-Ottoy statistics over sample-point centers.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mvproj/core.hpp"

namespace mvproj {

/// Pairwise Euclidean distance matrix, n x n (column j = distances to row j).
Matrix pairwise_distances(const Matrix& m);

/// Two-sample energy statistic
///   N1 N2 / (N1 + N2) * (2/(N1 N2) sum_between - 1/N1^2 sum_within1 - 1/N2^2 sum_within2).
/// Requires exactly two groups (NotTwoGroups).
double energy_stat(const LabeledDataset& data);

/// S_i = (mean distance of y_i to group 1 - mean distance to group 2) * w(i),
/// w(i) = -N2/N in group 1 and +N1/N in group 2. Sums to energy_stat.
std::vector<double> energy_scores(const LabeledDataset& data);

/// Sum over ordered pairs i != j of the Pearson score of the 2x2 table of
/// I(||x_k - x_i|| <= ||x_j - x_i||), I(||y_k - y_i|| <= ||y_j - y_i||)
/// over the N - 2 points k not in {i, j}. Direct O(N^3) double loop.
/// Requires N >= 3 (TooFewPoints).
double hhg_stat(const PairedDataset& data);

struct DistancePair {
  double u = 0.0;
  double v = 0.0;
};

/// A symmetric kernel of `order` paired univariate points.
struct KernelSpec {
  std::size_t order = 1;
  std::function<double(std::span<const DistancePair>)> h;
};

/// One observation (x_k, y_k) of paired multivariate data.
struct PairedPoint {
  std::vector<double> x;
  std::vector<double> y;
};

/// A symmetric kernel of `order` paired multivariate points.
struct LiftedKernel {
  std::size_t order = 2;
  std::function<double(std::span<const PairedPoint>)> f;
};

/// f(w_1..w_{m+1}) = 1/(m+1) sum_c h(distances of the other m points from
/// w_c), distances taken separately in the x and y blocks.
LiftedKernel u_lift(const KernelSpec& kernel);

/// Average of h over all size-m subsets.
double u_statistic(const KernelSpec& kernel, std::span<const DistancePair> sample);
/// Average of f over all size-(m+1) subsets of the rows.
double u_statistic(const LiftedKernel& kernel, const PairedDataset& data);

/// Mean over sample-point centers of the order-m U-statistic of h on the
/// N - 1 leave-one-out projected distances. Equals
/// u_statistic(u_lift(kernel), data).
double mean_leave_one_out_u_statistic(const KernelSpec& kernel, const PairedDataset& data);

std::vector<PairedPoint> paired_points(const PairedDataset& data);

}  // namespace mvproj
