#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mvproj/generators.hpp"
#include "mvproj/pipeline.hpp"

namespace mvproj {

struct PowerRow {
  std::size_t n = 0;
  std::size_t replications = 0;
  std::size_t rejections = 0;
  double rate = 0.0;
  std::optional<double> standard_error;  // binomial; undefined for R = 1
};

struct PowerTable {
  PoolingRule pooling = PoolingRule::MinP;
  std::vector<PowerRow> rows;
};

/// Rejection rate at level alpha for each sample size in the grid, one
/// table per pooling rule (config.pooling when `rules` is empty). All rules
/// share the same data and rearrangements. Replication r at grid index g
/// draws data from derive_seed(derive_seed(seed, kDataStream + g), r) and
/// permutations from derive_seed(derive_seed(seed, kTestStream + g), r), so
/// the tables do not depend on config.threads.
std::vector<PowerTable> power_study(const PipelineConfig& config, const ScenarioSpec& scenario,
                                    std::span<const PoolingRule> rules = {});

inline constexpr std::uint64_t kDataStream = 0xDA7A000000000000ULL;
inline constexpr std::uint64_t kTestStream = 0x7E57000000000000ULL;

}  // namespace mvproj
