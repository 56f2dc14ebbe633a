#include "mvproj/pooling.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mvproj/core.hpp"

namespace mvproj {

namespace {

void require_nonempty(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorCode::EmptyInput, "pooling needs at least one center");
}

void require_pvalues(std::span<const double> p) {
  require_nonempty(p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0 && p[i] <= 1.0)) {
      throw Error(ErrorCode::OutOfRangeP,
                  "p-value " + std::to_string(i) + " = " + std::to_string(p[i]) + " not in (0,1]");
    }
  }
}

}  // namespace

std::string_view name(PoolingRule rule) {
  switch (rule) {
    case PoolingRule::MaxStat: return "maxstat";
    case PoolingRule::MinP: return "minp";
    case PoolingRule::SumStat: return "sumstat";
    case PoolingRule::FisherLogP: return "fisher";
    case PoolingRule::MaxP: return "maxp";
    case PoolingRule::BonferroniGlobal: return "bonferroni";
    case PoolingRule::HommelGlobal: return "hommel";
    case PoolingRule::MeanStat: return "meanstat";
  }
  return "unknown";
}

PoolingRule parse_pooling(std::string_view text) {
  for (PoolingRule r : {PoolingRule::MaxStat, PoolingRule::MinP, PoolingRule::SumStat,
                        PoolingRule::FisherLogP, PoolingRule::MaxP, PoolingRule::BonferroniGlobal,
                        PoolingRule::HommelGlobal, PoolingRule::MeanStat}) {
    if (text == name(r)) return r;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown pooling rule '" + std::string(text) + "'");
}

bool is_global_null(PoolingRule rule) {
  return rule == PoolingRule::BonferroniGlobal || rule == PoolingRule::HommelGlobal;
}

bool larger_is_extreme(PoolingRule rule) {
  return rule != PoolingRule::MinP && rule != PoolingRule::MaxP && !is_global_null(rule);
}

double max_stat(std::span<const double> stats) {
  require_nonempty(stats);
  return *std::max_element(stats.begin(), stats.end());
}

double sum_stat(std::span<const double> stats) {
  require_nonempty(stats);
  double s = 0.0;
  for (double v : stats) s += v;
  return s;
}

double mean_stat(std::span<const double> stats) {
  return sum_stat(stats) / static_cast<double>(stats.size());
}

double min_p(std::span<const double> pvals) {
  require_pvalues(pvals);
  return *std::min_element(pvals.begin(), pvals.end());
}

double max_p(std::span<const double> pvals) {
  require_pvalues(pvals);
  return *std::max_element(pvals.begin(), pvals.end());
}

double fisher_log(std::span<const double> pvals) {
  require_pvalues(pvals);
  double s = 0.0;
  for (double p : pvals) s += std::log(p);
  return -2.0 * s;
}

double bonferroni_global(std::span<const double> pvals) {
  const double p1 = min_p(pvals);
  return std::min(1.0, static_cast<double>(pvals.size()) * p1);
}

double harmonic_number(std::size_t m) {
  double c = 0.0;
  for (std::size_t l = 1; l <= m; ++l) c += 1.0 / static_cast<double>(l);
  return c;
}

double hommel_global(std::span<const double> pvals) {
  require_pvalues(pvals);
  std::vector<double> sorted(pvals.begin(), pvals.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  const double scale = m * harmonic_number(sorted.size());
  double best = 1.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    best = std::min(best, scale * sorted[j] / static_cast<double>(j + 1));
  }
  return best;
}

double pool(PoolingRule rule, std::span<const double> stats, std::span<const double> pvals) {
  switch (rule) {
    case PoolingRule::MaxStat: return max_stat(stats);
    case PoolingRule::MinP: return min_p(pvals);
    case PoolingRule::SumStat: return sum_stat(stats);
    case PoolingRule::FisherLogP: return fisher_log(pvals);
    case PoolingRule::MaxP: return max_p(pvals);
    case PoolingRule::BonferroniGlobal: return bonferroni_global(pvals);
    case PoolingRule::HommelGlobal: return hommel_global(pvals);
    case PoolingRule::MeanStat: return mean_stat(stats);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown pooling rule");
}

}  // namespace mvproj
