#pragma once

// The two-step procedure made concrete: choose centers, project, apply a
// univariate test per center, pool, calibrate.

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "mvproj/core.hpp"
#include "mvproj/permutation.hpp"
#include "mvproj/pooling.hpp"
#include "mvproj/projection.hpp"
#include "mvproj/univariate.hpp"

namespace mvproj {

enum class Problem { TwoSample, KSample, Independence };

std::string_view name(Problem problem);

using Dataset = std::variant<LabeledDataset, PairedDataset>;

struct PipelineConfig {
  Problem problem = Problem::TwoSample;
  CenterStrategy centers = UniformBoundingBox{50, 0.1};
  TestId test = TestId::KS;
  PoolingRule pooling = PoolingRule::MinP;
  std::size_t permutations = 1000;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  bool exact = false;
  bool jitter = false;
  std::size_t threads = 0;
};

/// Throws InvalidConfig when the univariate test does not fit the problem,
/// alpha is outside (0,1) or B is 0 outside exact mode.
void validate(const PipelineConfig& config);

/// Per-center statistics for the observed data and every rearrangement,
/// plus the matching per-center p-values. Centers are drawn once (from
/// derive_seed(seed, kCenterStream)) and held fixed across rearrangements;
/// sample-point centers follow their row.
struct CenterNull {
  std::vector<CenterSpec> centers;
  NullTable statistics;
  NullTable p_values;
};

CenterNull compute_center_null(const PipelineConfig& config, const Dataset& data);

/// Pools a computed center null with `rule`. Global-null rules read the
/// observed per-center p-values directly (pooling_permutations = 0); the
/// others are calibrated against the pooled value of every rearrangement.
TestReport pool_center_null(const PipelineConfig& config, PoolingRule rule, const CenterNull& null);

TestReport run_pipeline(const PipelineConfig& config, const Dataset& data);

}  // namespace mvproj
