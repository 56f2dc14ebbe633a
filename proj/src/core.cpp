#include "mvproj/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mvproj {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NotTwoGroups: return "NotTwoGroups";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::OutOfRangeP: return "OutOfRangeP";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::TooManyAssignments: return "TooManyAssignments";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorCode::DimensionMismatch,
                  "row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                      " columns, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

std::vector<double> Matrix::row(std::size_t r) const {
  std::vector<double> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
  return out;
}

void validate_finite(const Matrix& m, std::string_view block_name) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto col = m.column(c);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (!std::isfinite(col[r])) {
        throw Error(ErrorCode::NonFiniteValue, std::string(block_name) + " row " +
                                                   std::to_string(r) + " column " +
                                                   std::to_string(c) + " is not finite");
      }
    }
  }
}

void validate_labels(std::span<const int> labels, std::size_t rows, int num_groups) {
  if (labels.size() != rows) {
    throw Error(ErrorCode::DimensionMismatch, "label count " + std::to_string(labels.size()) +
                                                  " does not match row count " +
                                                  std::to_string(rows));
  }
  if (num_groups < 2) {
    throw Error(ErrorCode::EmptyGroup,
                "at least 2 groups are required, got " + std::to_string(num_groups));
  }
  std::vector<std::size_t> counts(static_cast<std::size_t>(num_groups), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int g = labels[i];
    if (g < 1 || g > num_groups) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i) + " label " +
                                                    std::to_string(g) + " outside 1.." +
                                                    std::to_string(num_groups));
    }
    ++counts[static_cast<std::size_t>(g - 1)];
  }
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) {
      throw Error(ErrorCode::EmptyGroup, "group " + std::to_string(k + 1) + " has no rows");
    }
  }
}

LabeledDataset::LabeledDataset(Matrix y, std::vector<int> labels, int num_groups)
    : y_(std::make_shared<const Matrix>(std::move(y))),
      labels_(std::move(labels)),
      num_groups_(num_groups) {
  validate_labels(labels_, y_->rows(), num_groups_);
  validate_finite(*y_, "y");
  for (int k = 1; k <= num_groups_; ++k) group_names_.push_back(std::to_string(k));
}

namespace {

template <typename Key>
LabeledDataset recode(Matrix y, const std::vector<Key>& raw, const std::map<Key, int>& code) {
  std::vector<int> labels(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) labels[i] = code.at(raw[i]);
  return LabeledDataset(std::move(y), std::move(labels), static_cast<int>(code.size()));
}

}  // namespace

LabeledDataset LabeledDataset::from_raw_labels(Matrix y, const std::vector<std::string>& raw) {
  std::map<std::string, int> code;
  for (const auto& s : raw) code.emplace(s, 0);
  std::vector<std::string> names;
  int next = 1;
  for (auto& [name, c] : code) {
    c = next++;
    names.push_back(name);
  }
  LabeledDataset out = recode(std::move(y), raw, code);
  out.group_names_ = std::move(names);
  return out;
}

LabeledDataset LabeledDataset::from_raw_labels(Matrix y, const std::vector<int>& raw) {
  std::map<int, int> code;
  for (int v : raw) code.emplace(v, 0);
  std::vector<std::string> names;
  int next = 1;
  for (auto& [value, c] : code) {
    c = next++;
    names.push_back(std::to_string(value));
  }
  LabeledDataset out = recode(std::move(y), raw, code);
  out.group_names_ = std::move(names);
  return out;
}

std::vector<std::size_t> LabeledDataset::group_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(num_groups_), 0);
  for (int g : labels_) ++sizes[static_cast<std::size_t>(g - 1)];
  return sizes;
}

LabeledDataset LabeledDataset::with_labels(std::vector<int> labels) const {
  if (labels.size() != labels_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "relabeling must keep the row count");
  }
  LabeledDataset out;
  out.y_ = y_;
  out.labels_ = std::move(labels);
  out.num_groups_ = num_groups_;
  out.group_names_ = group_names_;
  return out;
}

PairedDataset::PairedDataset(Matrix x, Matrix y)
    : x_(std::make_shared<const Matrix>(std::move(x))),
      y_(std::make_shared<const Matrix>(std::move(y))) {
  validate(*this);
}

PairedDataset PairedDataset::with_y_order(std::span<const std::size_t> perm) const {
  const Matrix& src = *y_;
  if (perm.size() != src.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "permutation length does not match row count");
  }
  Matrix moved(src.rows(), src.cols());
  for (std::size_t c = 0; c < src.cols(); ++c) {
    const auto from = src.column(c);
    auto to = moved.column(c);
    for (std::size_t r = 0; r < src.rows(); ++r) to[r] = from[perm[r]];
  }
  PairedDataset out;
  out.x_ = x_;
  out.y_ = std::make_shared<const Matrix>(std::move(moved));
  return out;
}

void validate(const LabeledDataset& data) {
  validate_labels(data.labels(), data.y().rows(), data.num_groups());
  validate_finite(data.y(), "y");
}

void validate(const PairedDataset& data) {
  if (data.x().rows() != data.y().rows()) {
    throw Error(ErrorCode::DimensionMismatch, "x has " + std::to_string(data.x().rows()) +
                                                  " rows but y has " +
                                                  std::to_string(data.y().rows()));
  }
  if (data.x().cols() == 0 || data.y().cols() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "x and y need at least one column each");
  }
  validate_finite(data.x(), "x");
  validate_finite(data.y(), "y");
}

CenterSpec CenterSpec::fixed(std::vector<double> z) {
  return CenterSpec{TwoSampleCenter{std::move(z)}, FixedOrigin{}};
}

CenterSpec CenterSpec::fixed(std::vector<double> z_x, std::vector<double> z_y) {
  return CenterSpec{IndepCenter{std::move(z_x), std::move(z_y)}, FixedOrigin{}};
}

std::optional<std::size_t> CenterSpec::sample_index() const noexcept {
  if (const auto* sp = std::get_if<SamplePointOrigin>(&origin)) return sp->index;
  return std::nullopt;
}

std::size_t ProjectedSample::size() const noexcept {
  if (const auto* t = std::get_if<TwoSampleProjection>(&data)) return t->d.size();
  return std::get<PairedProjection>(data).d_x.size();
}

}  // namespace mvproj
