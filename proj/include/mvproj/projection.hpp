#pragma once

// Reduces multivariate observations to univariate distances from center
// points, and generates center points.

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mvproj/core.hpp"

namespace mvproj {

/// out[i] = || y_i - z ||. Throws DimensionMismatch when z.size() != y.cols().
std::vector<double> distances_from(std::span<const double> z, const Matrix& y);
void distances_from(std::span<const double> z, const Matrix& y, std::span<double> out);

/// Distances paired with group labels. A SamplePoint(i) center is taken
/// from row i of the data and row i is left out of the projection.
ProjectedSample project_two_sample(const CenterSpec& center, const LabeledDataset& data);

/// Paired distances (||x_k - z_x||, ||y_k - z_y||), leave-one-out for
/// SamplePoint centers.
ProjectedSample project_independence(const CenterSpec& center, const PairedDataset& data);

struct FixedList {
  std::vector<CenterSpec> centers;
};
/// Uniform on the axis-aligned bounding box of the pooled sample, each
/// coordinate range widened by `expansion` (split evenly between both ends).
struct UniformBoundingBox {
  std::size_t count = 50;
  double expansion = 0.1;
};
/// Normal with the sample mean and the diagonal of the sample covariance.
struct GaussianMomentFit {
  std::size_t count = 50;
};
/// Every observation becomes a center; projection is leave-one-out.
struct SamplePoints {};

using CenterStrategy = std::variant<FixedList, UniformBoundingBox, GaussianMomentFit, SamplePoints>;

std::string_view strategy_name(const CenterStrategy& strategy);

/// Deterministic given seed. Throws InvalidConfig for an empty FixedList,
/// a zero count or a negative expansion, and DimensionMismatch for fixed
/// centers that do not fit the data.
std::vector<CenterSpec> sample_centers(const CenterStrategy& strategy, const LabeledDataset& data,
                                       std::uint64_t seed);
std::vector<CenterSpec> sample_centers(const CenterStrategy& strategy, const PairedDataset& data,
                                       std::uint64_t seed);

/// True when every row of m is identical. Bounding-box centers then all
/// coincide with that point (with zero expansion); callers may warn.
bool has_degenerate_support(const Matrix& m);

}  // namespace mvproj
