#include "mvproj/pipeline.hpp"

#include <chrono>
#include <string>

#include "mvproj/random.hpp"
#include "mvproj/reference.hpp"

namespace mvproj {

std::string_view name(Problem problem) {
  switch (problem) {
    case Problem::TwoSample: return "two-sample";
    case Problem::KSample: return "k-sample";
    case Problem::Independence: return "independence";
  }
  return "unknown";
}

void validate(const PipelineConfig& config) {
  const bool indep = config.problem == Problem::Independence;
  if (indep && !is_independence_test(config.test)) {
    throw Error(ErrorCode::InvalidConfig, std::string("test '") + std::string(name(config.test)) +
                                              "' is not an independence test");
  }
  if (!indep && !is_two_sample_test(config.test)) {
    throw Error(ErrorCode::InvalidConfig, std::string("test '") + std::string(name(config.test)) +
                                              "' is not a K-sample test");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "alpha must lie in (0,1)");
  }
  if (!config.exact && config.permutations == 0) {
    throw Error(ErrorCode::InvalidConfig, "permutation count must be >= 1");
  }
}

namespace {

Matrix jittered(const Matrix& m, std::uint64_t seed) {
  Matrix out = m;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto noisy = jitter(m.column(c), derive_seed(seed, c));
    std::copy(noisy.begin(), noisy.end(), out.column(c).begin());
  }
  return out;
}

PermutationPlan plan_for(const PipelineConfig& config, PermutationMode mode) {
  PermutationPlan plan;
  plan.mode = mode;
  plan.permutations = config.permutations;
  plan.master_seed = config.seed;
  plan.exact = config.exact;
  plan.threads = config.threads;
  return plan;
}

CenterNull labeled_null(const PipelineConfig& config, LabeledDataset data) {
  if (config.problem == Problem::TwoSample && data.num_groups() != 2) {
    throw Error(ErrorCode::NotTwoGroups, "two-sample problem with K = " +
                                             std::to_string(data.num_groups()));
  }
  if (data.num_groups() > 2 && config.test != TestId::KruskalWallis) {
    throw Error(ErrorCode::InvalidConfig, "K > 2 groups need the Kruskal-Wallis test (kw)");
  }
  if (config.jitter) {
    data = LabeledDataset(jittered(data.y(), derive_seed(config.seed, kJitterStream)),
                          std::vector<int>(data.labels().begin(), data.labels().end()),
                          data.num_groups());
  }

  CenterNull out;
  out.centers = sample_centers(config.centers, data, derive_seed(config.seed, kCenterStream));

  // Label rearrangements leave every distance in place, so each center's
  // sort order is computed once.
  std::vector<RankedSample> ranked;
  ranked.reserve(out.centers.size());
  std::vector<std::uint32_t> rows;
  for (const auto& center : out.centers) {
    const ProjectedSample proj = project_two_sample(center, data);
    rows.clear();
    for (std::uint32_t r = 0; r < data.size(); ++r) {
      if (!proj.excluded_index || r != *proj.excluded_index) rows.push_back(r);
    }
    ranked.emplace_back(std::get<TwoSampleProjection>(proj.data).d, rows);
  }

  const TestId test = config.test;
  const int groups = data.num_groups();
  auto statistic = [&](std::span<const int> labels, std::span<double> result) {
    for (std::size_t j = 0; j < ranked.size(); ++j) {
      switch (test) {
        case TestId::KS: result[j] = ranked[j].ks(labels); break;
        case TestId::CVM: result[j] = ranked[j].cvm(labels); break;
        default: result[j] = ranked[j].kruskal_wallis(labels, groups); break;
      }
    }
  };
  out.statistics = label_permutation_null(data.labels(), ranked.size(), statistic,
                                          plan_for(config, PermutationMode::LabelPermute));
  out.p_values = row_p_values(out.statistics);
  return out;
}

CenterNull paired_null(const PipelineConfig& config, PairedDataset data) {
  if (config.jitter) {
    data = PairedDataset(jittered(data.x(), derive_seed(config.seed, kJitterStream)),
                         jittered(data.y(), derive_seed(config.seed, kJitterStream + 1)));
  }
  CenterNull out;
  out.centers = sample_centers(config.centers, data, derive_seed(config.seed, kCenterStream));
  const std::size_t n = data.size();
  const bool hoeffding = config.test == TestId::HoeffdingD;
  const std::size_t min_n = hoeffding ? 5 : 3;

  const bool sample_points = std::holds_alternative<SamplePoints>(config.centers);
  // Sample-point centers move with their y row under re-pairing, so keep
  // the full distance matrices; fixed centers only need one vector each.
  Matrix dx_all, dy_all;
  std::vector<std::vector<double>> dx, dy;
  if (sample_points) {
    if (n < 1 || n - 1 < (hoeffding ? min_n : min_n - 1)) {
      throw Error(ErrorCode::TooFewPoints, "leave-one-out projection leaves " +
                                               std::to_string(n - 1) + " points");
    }
    dx_all = pairwise_distances(data.x());
    dy_all = pairwise_distances(data.y());
  } else {
    if (n < min_n) throw Error(ErrorCode::TooFewPoints, std::to_string(n) + " points");
    for (const auto& center : out.centers) {
      const auto& c = std::get<IndepCenter>(center.point);
      dx.push_back(distances_from(c.z_x, data.x()));
      dy.push_back(distances_from(c.z_y, data.y()));
    }
  }

  const TestId test = config.test;
  const std::size_t width = out.centers.size();
  auto evaluate_pair = [test](std::span<const double> a, std::span<const double> b) {
    return test == TestId::HoeffdingD ? hoeffding_d(a, b) : thas_sum(a, b, 2);
  };
  auto statistic = [&](std::span<const std::size_t> order, std::span<double> result) {
    if (sample_points) {
      std::vector<double> a(n - 1), b(n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        const auto col_x = dx_all.column(i);
        const auto col_y = dy_all.column(order[i]);
        std::size_t k2 = 0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i) continue;
          a[k2] = col_x[k];
          b[k2] = col_y[order[k]];
          ++k2;
        }
        result[i] = evaluate_pair(a, b);
      }
    } else {
      std::vector<double> b(n);
      for (std::size_t j = 0; j < width; ++j) {
        for (std::size_t k = 0; k < n; ++k) b[k] = dy[j][order[k]];
        result[j] = evaluate_pair(dx[j], b);
      }
    }
  };
  out.statistics =
      pair_permutation_null(n, width, statistic, plan_for(config, PermutationMode::PairPermute));
  out.p_values = row_p_values(out.statistics);
  return out;
}

}  // namespace

CenterNull compute_center_null(const PipelineConfig& config, const Dataset& data) {
  validate(config);
  if (const auto* labeled = std::get_if<LabeledDataset>(&data)) {
    if (config.problem == Problem::Independence) {
      throw Error(ErrorCode::InvalidConfig, "independence problem needs paired data");
    }
    return labeled_null(config, *labeled);
  }
  if (config.problem != Problem::Independence) {
    throw Error(ErrorCode::InvalidConfig, "K-sample problem needs labeled data");
  }
  return paired_null(config, std::get<PairedDataset>(data));
}

TestReport pool_center_null(const PipelineConfig& config, PoolingRule rule, const CenterNull& null) {
  TestReport report;
  report.method.problem = name(config.problem);
  report.method.center_strategy = strategy_name(config.centers);
  report.method.univariate = name(config.test);
  report.method.pooling = name(rule);
  report.permutations = null.statistics.draws;
  report.seed = config.seed;

  const auto stats0 = null.statistics.row(0);
  const auto p0 = null.p_values.row(0);
  for (std::size_t j = 0; j < null.centers.size(); ++j) {
    report.per_center.push_back(CenterResult{null.centers[j], stats0[j], p0[j]});
  }

  if (is_global_null(rule)) {
    report.method.calibration = "global-null";
    report.method.pooling_permutations = 0;
    report.statistic = pool(rule, stats0, p0);
    report.p_value = report.statistic;
    return report;
  }

  report.method.calibration = null.statistics.exact ? "exact-permutation" : "permutation";
  report.method.pooling_permutations = null.statistics.draws;
  NullTable pooled;
  pooled.width = 1;
  pooled.draws = null.statistics.draws;
  pooled.exact = null.statistics.exact;
  pooled.values.resize(pooled.draws + 1);
  for (std::size_t r = 0; r <= pooled.draws; ++r) {
    pooled.values[r] = pool(rule, null.statistics.row(r), null.p_values.row(r));
  }
  report.statistic = pooled.values[0];
  report.p_value = column_p_value(pooled, 0, larger_is_extreme(rule));
  return report;
}

TestReport run_pipeline(const PipelineConfig& config, const Dataset& data) {
  const auto start = std::chrono::steady_clock::now();
  const CenterNull null = compute_center_null(config, data);
  TestReport report = pool_center_null(config, config.pooling, null);
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace mvproj
