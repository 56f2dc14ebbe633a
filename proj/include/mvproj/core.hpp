#pragma once

// Domain types shared by every module: matrices, datasets, center points,
// projected samples and test reports.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mvproj {

enum class ErrorCode {
  EmptyGroup,
  DimensionMismatch,
  NonFiniteValue,
  NotTwoGroups,
  TooFewPoints,
  EmptyInput,
  OutOfRangeP,
  InvalidPlan,
  TooManyAssignments,
  InvalidScenario,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Dense real matrix stored column-major, so that one coordinate of
/// consecutive observations is contiguous (the layout the distance kernels
/// vectorize over).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<const double> column(std::size_t c) const {
    return {data_.data() + c * rows_, rows_};
  }
  std::span<double> column(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::vector<double> row(std::size_t r) const;

  std::span<const double> values() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Validation helpers. Each throws exactly one mvproj::Error naming the
/// offending row/column or group.
void validate_finite(const Matrix& m, std::string_view block_name);
void validate_labels(std::span<const int> labels, std::size_t rows, int num_groups);

/// K-sample data: N x q observations, each with a group label in 1..K.
///
/// Raw labels (arbitrary integers or strings) are re-coded to contiguous
/// 1..K in sorted order of the raw values; the original names are kept for
/// reporting. Immutable; copies share the observation matrix.
class LabeledDataset {
 public:
  /// Labels already coded in 1..num_groups.
  LabeledDataset(Matrix y, std::vector<int> labels, int num_groups);

  static LabeledDataset from_raw_labels(Matrix y, const std::vector<std::string>& raw);
  static LabeledDataset from_raw_labels(Matrix y, const std::vector<int>& raw);

  const Matrix& y() const noexcept { return *y_; }
  std::span<const int> labels() const noexcept { return labels_; }
  int num_groups() const noexcept { return num_groups_; }
  std::size_t size() const noexcept { return y_->rows(); }
  std::size_t dim() const noexcept { return y_->cols(); }
  std::vector<std::size_t> group_sizes() const;
  const std::vector<std::string>& group_names() const noexcept { return group_names_; }

  /// Same observations with a different label assignment (used by the
  /// permutation engine). The new labels must be a rearrangement.
  LabeledDataset with_labels(std::vector<int> labels) const;

 private:
  LabeledDataset() = default;

  std::shared_ptr<const Matrix> y_;
  std::vector<int> labels_;
  int num_groups_ = 0;
  std::vector<std::string> group_names_;
};

/// Independence data: row i of x is paired with row i of y.
class PairedDataset {
 public:
  PairedDataset(Matrix x, Matrix y);

  const Matrix& x() const noexcept { return *x_; }
  const Matrix& y() const noexcept { return *y_; }
  std::size_t size() const noexcept { return x_->rows(); }

  /// Keeps x in place and reorders y rows: new y row i = old y row perm[i].
  PairedDataset with_y_order(std::span<const std::size_t> perm) const;

 private:
  PairedDataset() = default;

  std::shared_ptr<const Matrix> x_;
  std::shared_ptr<const Matrix> y_;
};

void validate(const LabeledDataset& data);
void validate(const PairedDataset& data);

struct FixedOrigin {
  friend bool operator==(const FixedOrigin&, const FixedOrigin&) = default;
};
struct SampledOrigin {
  std::string strategy;
  friend bool operator==(const SampledOrigin&, const SampledOrigin&) = default;
};
struct SamplePointOrigin {
  std::size_t index = 0;
  friend bool operator==(const SamplePointOrigin&, const SamplePointOrigin&) = default;
};
using CenterOrigin = std::variant<FixedOrigin, SampledOrigin, SamplePointOrigin>;

struct TwoSampleCenter {
  std::vector<double> z;
  friend bool operator==(const TwoSampleCenter&, const TwoSampleCenter&) = default;
};
struct IndepCenter {
  std::vector<double> z_x;
  std::vector<double> z_y;
  friend bool operator==(const IndepCenter&, const IndepCenter&) = default;
};

struct CenterSpec {
  std::variant<TwoSampleCenter, IndepCenter> point;
  CenterOrigin origin = FixedOrigin{};

  static CenterSpec fixed(std::vector<double> z);
  static CenterSpec fixed(std::vector<double> z_x, std::vector<double> z_y);

  bool is_sample_point() const noexcept {
    return std::holds_alternative<SamplePointOrigin>(origin);
  }
  std::optional<std::size_t> sample_index() const noexcept;

  friend bool operator==(const CenterSpec&, const CenterSpec&) = default;
};

struct TwoSampleProjection {
  std::vector<double> d;
  std::vector<int> labels;
  int num_groups = 0;
};

struct PairedProjection {
  std::vector<double> d_x;
  std::vector<double> d_y;
};

struct ProjectedSample {
  std::variant<TwoSampleProjection, PairedProjection> data;
  std::optional<std::size_t> excluded_index;

  std::size_t size() const noexcept;
};

struct CenterResult {
  CenterSpec center;
  double statistic = 0.0;
  double p_value = 1.0;
};

struct MethodDescriptor {
  std::string problem;          // two-sample | k-sample | independence
  std::string center_strategy;  // fixed | bbox | gauss | sample-points
  std::string univariate;       // ks | cvm | hoeffding | thas | kw
  std::string pooling;          // minp | maxp | fisher | ...
  std::string calibration;      // permutation | global-null
  std::size_t pooling_permutations = 0;
};

struct TestReport {
  double statistic = 0.0;
  double p_value = 1.0;
  MethodDescriptor method;
  std::vector<CenterResult> per_center;
  std::size_t permutations = 0;
  std::uint64_t seed = 0;
  double runtime_ms = 0.0;
};

}  // namespace mvproj
