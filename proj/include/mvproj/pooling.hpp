#pragma once

// Pooling of M per-center statistics or p-values into a single decision.

#include <span>
#include <string_view>

namespace mvproj {

enum class PoolingRule {
  MaxStat,           // S1: largest per-center statistic
  MinP,              // S2: smallest per-center p-value
  SumStat,           // T1: sum of statistics
  FisherLogP,        // T2: -2 sum log p
  MaxP,
  BonferroniGlobal,  // min(1, M p_(1)); no permutation needed
  HommelGlobal,      // min(1, min_j M C_M p_(j) / j); no permutation needed
  MeanStat,          // T1 / M
};

std::string_view name(PoolingRule rule);
PoolingRule parse_pooling(std::string_view text);

/// Bonferroni and Hommel give a final p-value directly; every other rule
/// is a statistic that needs permutation calibration.
bool is_global_null(PoolingRule rule);

/// Whether large values of the pooled value are evidence against H0.
/// MinP and MaxP are oriented the other way.
bool larger_is_extreme(PoolingRule rule);

double max_stat(std::span<const double> stats);
double sum_stat(std::span<const double> stats);
double mean_stat(std::span<const double> stats);
double min_p(std::span<const double> pvals);
double max_p(std::span<const double> pvals);
double fisher_log(std::span<const double> pvals);
double bonferroni_global(std::span<const double> pvals);
double hommel_global(std::span<const double> pvals);

/// C_M = sum_{l=1}^{M} 1/l.
double harmonic_number(std::size_t m);

/// The rule applied to one row of per-center results.
double pool(PoolingRule rule, std::span<const double> stats, std::span<const double> pvals);

}  // namespace mvproj
