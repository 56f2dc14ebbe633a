#include "mvproj/reference.hpp"

#include <cmath>
#include <string>

#include "mvproj/projection.hpp"
#include "mvproj/univariate.hpp"

namespace mvproj {

Matrix pairwise_distances(const Matrix& m) {
  Matrix out(m.rows(), m.rows());
  for (std::size_t j = 0; j < m.rows(); ++j) {
    const auto z = m.row(j);
    distances_from(z, m, out.column(j));
  }
  return out;
}

namespace {

void require_two_groups(const LabeledDataset& data) {
  if (data.num_groups() != 2) {
    throw Error(ErrorCode::NotTwoGroups,
                "energy statistic needs K = 2, got K = " + std::to_string(data.num_groups()));
  }
}

double euclid(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    acc = acc + diff * diff;
  }
  return std::sqrt(acc);
}

// Visits every size-k subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

double energy_stat(const LabeledDataset& data) {
  require_two_groups(data);
  const Matrix dist = pairwise_distances(data.y());
  const auto labels = data.labels();
  double between = 0.0, within1 = 0.0, within2 = 0.0;
  for (std::size_t l = 0; l < data.size(); ++l) {
    for (std::size_t m = 0; m < data.size(); ++m) {
      const double d = dist(l, m);
      if (labels[l] == 1 && labels[m] == 1) {
        within1 += d;
      } else if (labels[l] == 2 && labels[m] == 2) {
        within2 += d;
      } else if (labels[l] == 1) {
        between += d;
      }
    }
  }
  const auto sizes = data.group_sizes();
  const double n1 = static_cast<double>(sizes[0]);
  const double n2 = static_cast<double>(sizes[1]);
  return n1 * n2 / (n1 + n2) *
         (2.0 / (n1 * n2) * between - within1 / (n1 * n1) - within2 / (n2 * n2));
}

std::vector<double> energy_scores(const LabeledDataset& data) {
  require_two_groups(data);
  const Matrix dist = pairwise_distances(data.y());
  const auto labels = data.labels();
  const auto sizes = data.group_sizes();
  const double n1 = static_cast<double>(sizes[0]);
  const double n2 = static_cast<double>(sizes[1]);
  const double n = n1 + n2;

  std::vector<double> scores(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto col = dist.column(i);
    double to1 = 0.0, to2 = 0.0;
    for (std::size_t m = 0; m < data.size(); ++m) (labels[m] == 1 ? to1 : to2) += col[m];
    const double w = labels[i] == 1 ? -n2 / n : n1 / n;
    scores[i] = (to1 / n1 - to2 / n2) * w;
  }
  return scores;
}

double hhg_stat(const PairedDataset& data) {
  const std::size_t n = data.size();
  if (n < 3) {
    throw Error(ErrorCode::TooFewPoints, "HHG statistic needs at least 3 points, got " +
                                             std::to_string(n));
  }
  const Matrix dx = pairwise_distances(data.x());
  const Matrix dy = pairwise_distances(data.y());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double rx = dx(j, i);
      const double ry = dy(j, i);
      std::uint64_t a = 0, b = 0, c = 0, d = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const bool in_x = dx(k, i) <= rx;
        const bool in_y = dy(k, i) <= ry;
        if (in_x && in_y) {
          ++a;
        } else if (in_x) {
          ++b;
        } else if (in_y) {
          ++c;
        } else {
          ++d;
        }
      }
      total += pearson_2x2(a, b, c, d);
    }
  }
  return total;
}

std::vector<PairedPoint> paired_points(const PairedDataset& data) {
  std::vector<PairedPoint> out(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    out[k].x = data.x().row(k);
    out[k].y = data.y().row(k);
  }
  return out;
}

LiftedKernel u_lift(const KernelSpec& kernel) {
  const std::size_t m = kernel.order;
  auto h = kernel.h;
  return LiftedKernel{m + 1, [m, h](std::span<const PairedPoint> points) {
                        std::vector<DistancePair> projected;
                        projected.reserve(m);
                        double total = 0.0;
                        for (std::size_t c = 0; c < points.size(); ++c) {
                          projected.clear();
                          for (std::size_t k = 0; k < points.size(); ++k) {
                            if (k == c) continue;
                            projected.push_back({euclid(points[k].x, points[c].x),
                                                 euclid(points[k].y, points[c].y)});
                          }
                          total += h(projected);
                        }
                        return total / static_cast<double>(points.size());
                      }};
}

double u_statistic(const KernelSpec& kernel, std::span<const DistancePair> sample) {
  if (kernel.order == 0 || kernel.order > sample.size()) {
    throw Error(ErrorCode::TooFewPoints, "U-statistic of order " + std::to_string(kernel.order) +
                                             " on " + std::to_string(sample.size()) + " points");
  }
  std::vector<DistancePair> subset(kernel.order);
  double total = 0.0;
  std::size_t count = 0;
  for_each_subset(sample.size(), kernel.order, [&](std::span<const std::size_t> idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) subset[i] = sample[idx[i]];
    total += kernel.h(subset);
    ++count;
  });
  return total / static_cast<double>(count);
}

double u_statistic(const LiftedKernel& kernel, const PairedDataset& data) {
  const auto points = paired_points(data);
  if (kernel.order == 0 || kernel.order > points.size()) {
    throw Error(ErrorCode::TooFewPoints, "U-statistic of order " + std::to_string(kernel.order) +
                                             " on " + std::to_string(points.size()) + " points");
  }
  std::vector<PairedPoint> subset(kernel.order);
  double total = 0.0;
  std::size_t count = 0;
  for_each_subset(points.size(), kernel.order, [&](std::span<const std::size_t> idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) subset[i] = points[idx[i]];
    total += kernel.f(subset);
    ++count;
  });
  return total / static_cast<double>(count);
}

double mean_leave_one_out_u_statistic(const KernelSpec& kernel, const PairedDataset& data) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto proj = project_independence(
        CenterSpec{IndepCenter{data.x().row(i), data.y().row(i)}, SamplePointOrigin{i}}, data);
    const auto& p = std::get<PairedProjection>(proj.data);
    std::vector<DistancePair> sample(p.d_x.size());
    for (std::size_t k = 0; k < sample.size(); ++k) sample[k] = {p.d_x[k], p.d_y[k]};
    total += u_statistic(kernel, sample);
  }
  return total / static_cast<double>(data.size());
}

}  // namespace mvproj
