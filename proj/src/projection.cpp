#include "mvproj/projection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mvproj/random.hpp"
#include "mvproj/simd/distance_kernels.hpp"

namespace mvproj {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has dimension " +
                                                  std::to_string(got) + ", data has " +
                                                  std::to_string(want));
  }
}

// Drops entry `skip` (if any) from a full-length vector.
std::vector<double> without(std::vector<double> v, std::optional<std::size_t> skip) {
  if (skip) v.erase(v.begin() + static_cast<std::ptrdiff_t>(*skip));
  return v;
}

std::optional<std::size_t> checked_index(const CenterSpec& center, std::size_t n) {
  auto idx = center.sample_index();
  if (idx && *idx >= n) {
    throw Error(ErrorCode::DimensionMismatch, "sample-point center index " +
                                                  std::to_string(*idx) + " out of range for " +
                                                  std::to_string(n) + " rows");
  }
  return idx;
}

struct Box {
  std::vector<double> lo, hi;
};

Box bounding_box(const Matrix& m, double expansion) {
  Box box{std::vector<double>(m.cols()), std::vector<double>(m.cols())};
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto col = m.column(c);
    const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
    const double pad = 0.5 * expansion * (*mx - *mn);
    box.lo[c] = *mn - pad;
    box.hi[c] = *mx + pad;
  }
  return box;
}

std::vector<double> draw_box(const Box& box, Rng& rng) {
  std::vector<double> z(box.lo.size());
  for (std::size_t c = 0; c < z.size(); ++c) {
    z[c] = box.lo[c] + (box.hi[c] - box.lo[c]) * rng.uniform();
  }
  return z;
}

struct Moments {
  std::vector<double> mean, sd;
};

Moments moments(const Matrix& m) {
  Moments out{std::vector<double>(m.cols()), std::vector<double>(m.cols())};
  const auto n = static_cast<double>(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto col = m.column(c);
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    out.mean[c] = mean;
    out.sd[c] = m.rows() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
  return out;
}

std::vector<double> draw_gauss(const Moments& mo, Rng& rng) {
  std::vector<double> z(mo.mean.size());
  for (std::size_t c = 0; c < z.size(); ++c) z[c] = mo.mean[c] + mo.sd[c] * rng.normal();
  return z;
}

void check_strategy(const CenterStrategy& strategy) {
  if (const auto* f = std::get_if<FixedList>(&strategy); f && f->centers.empty()) {
    throw Error(ErrorCode::InvalidConfig, "fixed center list is empty");
  }
  if (const auto* b = std::get_if<UniformBoundingBox>(&strategy)) {
    if (b->count == 0) throw Error(ErrorCode::InvalidConfig, "center count must be >= 1");
    if (!(b->expansion >= 0.0)) throw Error(ErrorCode::InvalidConfig, "expansion must be >= 0");
  }
  if (const auto* g = std::get_if<GaussianMomentFit>(&strategy); g && g->count == 0) {
    throw Error(ErrorCode::InvalidConfig, "center count must be >= 1");
  }
}

}  // namespace

std::vector<double> distances_from(std::span<const double> z, const Matrix& y) {
  std::vector<double> out(y.rows());
  distances_from(z, y, out);
  return out;
}

void distances_from(std::span<const double> z, const Matrix& y, std::span<double> out) {
  require_dim(z.size(), y.cols(), "center");
  require_dim(out.size(), y.rows(), "output");
  if (y.rows() == 0) return;
  simd::distances(y.values().data(), y.rows(), y.cols(), z.data(), out.data());
}

ProjectedSample project_two_sample(const CenterSpec& center, const LabeledDataset& data) {
  const auto* tc = std::get_if<TwoSampleCenter>(&center.point);
  if (!tc) throw Error(ErrorCode::DimensionMismatch, "independence center used for K-sample data");
  const auto skip = checked_index(center, data.size());
  const std::vector<double> z = skip ? data.y().row(*skip) : tc->z;

  TwoSampleProjection proj;
  proj.d = without(distances_from(z, data.y()), skip);
  proj.labels.assign(data.labels().begin(), data.labels().end());
  if (skip) proj.labels.erase(proj.labels.begin() + static_cast<std::ptrdiff_t>(*skip));
  proj.num_groups = data.num_groups();
  return ProjectedSample{std::move(proj), skip};
}

ProjectedSample project_independence(const CenterSpec& center, const PairedDataset& data) {
  const auto* ic = std::get_if<IndepCenter>(&center.point);
  if (!ic) throw Error(ErrorCode::DimensionMismatch, "K-sample center used for paired data");
  const auto skip = checked_index(center, data.size());
  const std::vector<double> zx = skip ? data.x().row(*skip) : ic->z_x;
  const std::vector<double> zy = skip ? data.y().row(*skip) : ic->z_y;

  PairedProjection proj;
  proj.d_x = without(distances_from(zx, data.x()), skip);
  proj.d_y = without(distances_from(zy, data.y()), skip);
  return ProjectedSample{std::move(proj), skip};
}

std::string_view strategy_name(const CenterStrategy& strategy) {
  switch (strategy.index()) {
    case 0: return "fixed";
    case 1: return "bbox";
    case 2: return "gauss";
    default: return "sample-points";
  }
}

std::vector<CenterSpec> sample_centers(const CenterStrategy& strategy, const LabeledDataset& data,
                                       std::uint64_t seed) {
  check_strategy(strategy);
  const Matrix& y = data.y();
  std::vector<CenterSpec> out;
  Rng rng(seed);

  if (const auto* f = std::get_if<FixedList>(&strategy)) {
    for (const auto& c : f->centers) {
      const auto* tc = std::get_if<TwoSampleCenter>(&c.point);
      if (!tc) throw Error(ErrorCode::DimensionMismatch, "fixed center is not a K-sample center");
      require_dim(tc->z.size(), y.cols(), "fixed center");
      out.push_back(CenterSpec{*tc, FixedOrigin{}});
    }
  } else if (const auto* b = std::get_if<UniformBoundingBox>(&strategy)) {
    const Box box = bounding_box(y, b->expansion);
    for (std::size_t m = 0; m < b->count; ++m) {
      out.push_back(CenterSpec{TwoSampleCenter{draw_box(box, rng)}, SampledOrigin{"bbox"}});
    }
  } else if (const auto* g = std::get_if<GaussianMomentFit>(&strategy)) {
    const Moments mo = moments(y);
    for (std::size_t m = 0; m < g->count; ++m) {
      out.push_back(CenterSpec{TwoSampleCenter{draw_gauss(mo, rng)}, SampledOrigin{"gauss"}});
    }
  } else {
    for (std::size_t i = 0; i < y.rows(); ++i) {
      out.push_back(CenterSpec{TwoSampleCenter{y.row(i)}, SamplePointOrigin{i}});
    }
  }
  return out;
}

std::vector<CenterSpec> sample_centers(const CenterStrategy& strategy, const PairedDataset& data,
                                       std::uint64_t seed) {
  check_strategy(strategy);
  const Matrix& x = data.x();
  const Matrix& y = data.y();
  std::vector<CenterSpec> out;
  Rng rng(seed);

  if (const auto* f = std::get_if<FixedList>(&strategy)) {
    for (const auto& c : f->centers) {
      const auto* ic = std::get_if<IndepCenter>(&c.point);
      if (!ic) throw Error(ErrorCode::DimensionMismatch, "fixed center is not an independence center");
      require_dim(ic->z_x.size(), x.cols(), "fixed center x-part");
      require_dim(ic->z_y.size(), y.cols(), "fixed center y-part");
      out.push_back(CenterSpec{*ic, FixedOrigin{}});
    }
  } else if (const auto* b = std::get_if<UniformBoundingBox>(&strategy)) {
    const Box bx = bounding_box(x, b->expansion);
    const Box by = bounding_box(y, b->expansion);
    for (std::size_t m = 0; m < b->count; ++m) {
      auto zx = draw_box(bx, rng);
      auto zy = draw_box(by, rng);
      out.push_back(CenterSpec{IndepCenter{std::move(zx), std::move(zy)}, SampledOrigin{"bbox"}});
    }
  } else if (const auto* g = std::get_if<GaussianMomentFit>(&strategy)) {
    const Moments mx = moments(x);
    const Moments my = moments(y);
    for (std::size_t m = 0; m < g->count; ++m) {
      auto zx = draw_gauss(mx, rng);
      auto zy = draw_gauss(my, rng);
      out.push_back(CenterSpec{IndepCenter{std::move(zx), std::move(zy)}, SampledOrigin{"gauss"}});
    }
  } else {
    for (std::size_t i = 0; i < x.rows(); ++i) {
      out.push_back(CenterSpec{IndepCenter{x.row(i), y.row(i)}, SamplePointOrigin{i}});
    }
  }
  return out;
}

bool has_degenerate_support(const Matrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto col = m.column(c);
    if (std::any_of(col.begin(), col.end(), [&](double v) { return v != col.front(); })) {
      return false;
    }
  }
  return true;
}

}  // namespace mvproj
