#include "mvproj/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mvproj/random.hpp"

namespace mvproj {

std::string_view name(TestId test) {
  switch (test) {
    case TestId::KS: return "ks";
    case TestId::CVM: return "cvm";
    case TestId::HoeffdingD: return "hoeffding";
    case TestId::ThasSum: return "thas";
    case TestId::KruskalWallis: return "kw";
  }
  return "unknown";
}

TestId parse_test(std::string_view text) {
  for (TestId t : {TestId::KS, TestId::CVM, TestId::HoeffdingD, TestId::ThasSum,
                   TestId::KruskalWallis}) {
    if (text == name(t)) return t;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown univariate test '" + std::string(text) + "'");
}

bool is_two_sample_test(TestId test) {
  return test == TestId::KS || test == TestId::CVM || test == TestId::KruskalWallis;
}

bool is_independence_test(TestId test) {
  return test == TestId::HoeffdingD || test == TestId::ThasSum;
}

StatisticBounds bounds(TestId test) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (test) {
    case TestId::KS: return {0.0, 1.0};
    case TestId::CVM: return {0.0, inf};
    case TestId::HoeffdingD: return {-0.5, 1.0};
    case TestId::ThasSum: return {0.0, inf};
    case TestId::KruskalWallis: return {0.0, inf};
  }
  return {-inf, inf};
}

RankedSample::RankedSample(std::span<const double> d, std::span<const std::uint32_t> row_ids) {
  if (!row_ids.empty() && row_ids.size() != d.size()) {
    throw Error(ErrorCode::DimensionMismatch, "row id map does not match sample size");
  }
  std::vector<std::uint32_t> order(d.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return d[a] < d[b]; });

  sorted_rows_.resize(d.size());
  for (std::size_t s = 0; s < order.size(); ++s) {
    sorted_rows_[s] = row_ids.empty() ? order[s] : row_ids[order[s]];
  }
  for (std::size_t s = 0; s < order.size(); ++s) {
    if (s + 1 == order.size() || d[order[s + 1]] != d[order[s]]) {
      block_end_.push_back(static_cast<std::uint32_t>(s + 1));
    }
  }
}

namespace {

struct GroupCounts {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

GroupCounts two_group_counts(std::span<const std::uint32_t> rows, std::span<const int> labels) {
  GroupCounts g;
  for (std::uint32_t r : rows) {
    const int l = labels[r];
    if (l == 1) {
      ++g.n1;
    } else if (l == 2) {
      ++g.n2;
    } else {
      throw Error(ErrorCode::NotTwoGroups, "label " + std::to_string(l) + " in a two-sample test");
    }
  }
  if (g.n1 == 0 || g.n2 == 0) {
    throw Error(ErrorCode::NotTwoGroups, "both groups must be nonempty");
  }
  return g;
}

}  // namespace

double RankedSample::ks(std::span<const int> labels) const {
  const GroupCounts g = two_group_counts(sorted_rows_, labels);
  const double inv1 = 1.0 / static_cast<double>(g.n1);
  const double inv2 = 1.0 / static_cast<double>(g.n2);
  std::size_t c1 = 0, c2 = 0, s = 0;
  double best = 0.0;
  for (std::uint32_t end : block_end_) {
    for (; s < end; ++s) (labels[sorted_rows_[s]] == 1 ? c1 : c2)++;
    best = std::max(best, std::abs(static_cast<double>(c1) * inv1 - static_cast<double>(c2) * inv2));
  }
  return best;
}

double RankedSample::cvm(std::span<const int> labels) const {
  const GroupCounts g = two_group_counts(sorted_rows_, labels);
  const double inv1 = 1.0 / static_cast<double>(g.n1);
  const double inv2 = 1.0 / static_cast<double>(g.n2);
  std::size_t c1 = 0, c2 = 0, s = 0;
  double sum = 0.0;
  for (std::uint32_t end : block_end_) {
    const std::size_t begin = s;
    for (; s < end; ++s) (labels[sorted_rows_[s]] == 1 ? c1 : c2)++;
    const double diff = static_cast<double>(c1) * inv1 - static_cast<double>(c2) * inv2;
    sum += static_cast<double>(end - begin) * diff * diff;
  }
  const double n = static_cast<double>(g.n1 + g.n2);
  return static_cast<double>(g.n1) * static_cast<double>(g.n2) / (n * n) * sum;
}

double RankedSample::kruskal_wallis(std::span<const int> labels, int num_groups) const {
  std::vector<double> rank_sum(static_cast<std::size_t>(num_groups), 0.0);
  std::vector<std::size_t> count(static_cast<std::size_t>(num_groups), 0);
  std::size_t s = 0;
  for (std::uint32_t end : block_end_) {
    const double mid = 0.5 * (static_cast<double>(s + 1) + static_cast<double>(end));
    for (; s < end; ++s) {
      const int l = labels[sorted_rows_[s]];
      if (l < 1 || l > num_groups) {
        throw Error(ErrorCode::DimensionMismatch, "label " + std::to_string(l) + " outside 1.." +
                                                      std::to_string(num_groups));
      }
      rank_sum[static_cast<std::size_t>(l - 1)] += mid;
      ++count[static_cast<std::size_t>(l - 1)];
    }
  }
  const auto present = std::count_if(count.begin(), count.end(), [](std::size_t c) { return c > 0; });
  if (present < 2) throw Error(ErrorCode::NotTwoGroups, "Kruskal-Wallis needs two nonempty groups");

  const double n = static_cast<double>(size());
  double acc = 0.0;
  for (std::size_t k = 0; k < count.size(); ++k) {
    if (count[k] > 0) acc += rank_sum[k] * rank_sum[k] / static_cast<double>(count[k]);
  }
  return 12.0 / (n * (n + 1.0)) * acc - 3.0 * (n + 1.0);
}

double ks_two_sample(std::span<const double> d, std::span<const int> labels) {
  if (labels.size() != d.size()) throw Error(ErrorCode::DimensionMismatch, "labels vs distances");
  return RankedSample(d).ks(labels);
}

double cvm_two_sample(std::span<const double> d, std::span<const int> labels) {
  if (labels.size() != d.size()) throw Error(ErrorCode::DimensionMismatch, "labels vs distances");
  return RankedSample(d).cvm(labels);
}

double kruskal_wallis(std::span<const double> d, std::span<const int> labels, int num_groups) {
  if (labels.size() != d.size()) throw Error(ErrorCode::DimensionMismatch, "labels vs distances");
  return RankedSample(d).kruskal_wallis(labels, num_groups);
}

namespace {

const TwoSampleProjection& two_sample_part(const ProjectedSample& proj) {
  const auto* t = std::get_if<TwoSampleProjection>(&proj.data);
  if (!t) throw Error(ErrorCode::NotTwoGroups, "paired projection given to a K-sample test");
  return *t;
}

const PairedProjection& paired_part(const ProjectedSample& proj) {
  const auto* p = std::get_if<PairedProjection>(&proj.data);
  if (!p) throw Error(ErrorCode::DimensionMismatch, "K-sample projection given to an independence test");
  if (p->d_x.size() != p->d_y.size()) throw Error(ErrorCode::DimensionMismatch, "d_x vs d_y length");
  return *p;
}

}  // namespace

UnivariateStatistic ks_two_sample(const ProjectedSample& proj) {
  const auto& t = two_sample_part(proj);
  return {ks_two_sample(t.d, t.labels), TestId::KS, t.d.size()};
}

UnivariateStatistic cvm_two_sample(const ProjectedSample& proj) {
  const auto& t = two_sample_part(proj);
  return {cvm_two_sample(t.d, t.labels), TestId::CVM, t.d.size()};
}

UnivariateStatistic kruskal_wallis(const ProjectedSample& proj) {
  const auto& t = two_sample_part(proj);
  return {kruskal_wallis(t.d, t.labels, t.num_groups), TestId::KruskalWallis, t.d.size()};
}

namespace {

// 1-based Fenwick tree over counts.
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i) {
    for (; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  std::uint32_t prefix(std::size_t i) const {
    std::uint32_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::uint32_t> tree_;
};

// le[i] = #{j : v_j <= v_i} (self included); `order` receives ascending order.
std::vector<std::uint32_t> count_le(std::span<const double> v, std::vector<std::uint32_t>& order) {
  order.resize(v.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return v[a] < v[b]; });
  std::vector<std::uint32_t> le(v.size());
  std::size_t s = 0;
  while (s < order.size()) {
    std::size_t e = s + 1;
    while (e < order.size() && v[order[e]] == v[order[s]]) ++e;
    for (std::size_t k = s; k < e; ++k) le[order[k]] = static_cast<std::uint32_t>(e);
    s = e;
  }
  return le;
}

}  // namespace

DominanceCounts dominance_counts(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "x vs y length");
  const std::size_t n = x.size();
  std::vector<std::uint32_t> x_order, y_order;
  const auto le_x = count_le(x, x_order);
  const auto le_y = count_le(y, y_order);

  DominanceCounts out{std::vector<std::uint32_t>(n), std::vector<std::uint32_t>(n),
                      std::vector<std::uint32_t>(n)};
  Fenwick tree(n);
  std::size_t s = 0;
  while (s < n) {
    std::size_t e = s + 1;
    while (e < n && x[x_order[e]] == x[x_order[s]]) ++e;
    for (std::size_t k = s; k < e; ++k) tree.add(le_y[x_order[k]]);
    for (std::size_t k = s; k < e; ++k) {
      const std::uint32_t i = x_order[k];
      out.le_both[i] = tree.prefix(le_y[i]) - 1;
    }
    s = e;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.le_x[i] = le_x[i] - 1;
    out.le_y[i] = le_y[i] - 1;
  }
  return out;
}

__int128 hoeffding_numerator(std::span<const double> x, std::span<const double> y) {
  const DominanceCounts dc = dominance_counts(x, y);
  const auto others = static_cast<std::int64_t>(x.size()) - 1;
  __int128 total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::int64_t n11 = dc.le_both[i];
    const std::int64_t n10 = dc.le_x[i] - n11;
    const std::int64_t n01 = dc.le_y[i] - n11;
    const std::int64_t n00 = others - dc.le_x[i] - dc.le_y[i] + n11;
    total += static_cast<__int128>(n11 * (n11 - 1)) * (n00 * (n00 - 1));
    total += static_cast<__int128>(n10 * (n10 - 1)) * (n01 * (n01 - 1));
    total -= 2 * static_cast<__int128>(n11 * n00) * (n10 * n01);
  }
  return total;
}

double hoeffding_d(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "x vs y length");
  const auto n = static_cast<std::int64_t>(x.size());
  if (n < 5) {
    throw Error(ErrorCode::TooFewPoints, "Hoeffding's D needs at least 5 points, got " +
                                             std::to_string(n));
  }
  const __int128 denom = static_cast<__int128>(n) * (n - 1) * (n - 2) * (n - 3) * (n - 4);
  const __int128 num = hoeffding_numerator(x, y);
  return static_cast<double>(30.0L * static_cast<long double>(num) / static_cast<long double>(denom));
}

UnivariateStatistic hoeffding_d(const ProjectedSample& proj) {
  const auto& p = paired_part(proj);
  return {hoeffding_d(p.d_x, p.d_y), TestId::HoeffdingD, p.d_x.size()};
}

double pearson_2x2(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  const std::uint64_t r1 = a + b, r2 = c + d, c1 = a + c, c2 = b + d;
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0) return 0.0;
  const double n = static_cast<double>(r1 + r2);
  const double diff = static_cast<double>(static_cast<__int128>(a) * d - static_cast<__int128>(b) * c);
  return n * diff * diff /
         (static_cast<double>(r1) * static_cast<double>(r2) * static_cast<double>(c1) *
          static_cast<double>(c2));
}

double thas_sum(std::span<const double> x, std::span<const double> y, std::size_t min_points) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "x vs y length");
  if (x.size() < min_points) {
    throw Error(ErrorCode::TooFewPoints, "Thas-Ottoy statistic needs at least " +
                                             std::to_string(min_points) + " points, got " +
                                             std::to_string(x.size()));
  }
  const DominanceCounts dc = dominance_counts(x, y);
  const std::uint64_t others = x.size() - 1;
  double total = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const std::uint64_t a = dc.le_both[j];
    const std::uint64_t b = dc.le_x[j] - a;
    const std::uint64_t c = dc.le_y[j] - a;
    const std::uint64_t d = others - dc.le_x[j] - dc.le_y[j] + a;
    total += pearson_2x2(a, b, c, d);
  }
  return total;
}

UnivariateStatistic thas_sum(const ProjectedSample& proj) {
  const auto& p = paired_part(proj);
  return {thas_sum(p.d_x, p.d_y, proj.excluded_index ? 2 : 3), TestId::ThasSum, p.d_x.size()};
}

UnivariateStatistic evaluate(TestId test, const ProjectedSample& proj) {
  switch (test) {
    case TestId::KS: return ks_two_sample(proj);
    case TestId::CVM: return cvm_two_sample(proj);
    case TestId::KruskalWallis: return kruskal_wallis(proj);
    case TestId::HoeffdingD: return hoeffding_d(proj);
    case TestId::ThasSum: return thas_sum(proj);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown test");
}

std::vector<double> jitter(std::span<const double> d, std::uint64_t seed) {
  double scale = 0.0;
  for (double v : d) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  Rng rng(seed);
  std::vector<double> out(d.begin(), d.end());
  for (double& v : out) v += (rng.uniform() - 0.5) * 2e-9 * scale;
  return out;
}

}  // namespace mvproj
