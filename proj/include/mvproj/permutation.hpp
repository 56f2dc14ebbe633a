#pragma once

// Permutation calibration.
//
// Monte Carlo mode draws B rearrangements; rearrangement b (1..B) is a
// Fisher-Yates shuffle driven by Rng(derive_seed(master_seed, b)), so the
// null sample is the same for any thread count or execution order. The
// p-value is (1 + #{b : T_b >= T_obs}) / (B + 1).
//
// Exact mode enumerates every distinct rearrangement (the identity among
// them) and reports #{assignments with T >= T_obs} / #assignments.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mvproj/core.hpp"

namespace mvproj {

enum class PermutationMode { LabelPermute, PairPermute };

struct PermutationPlan {
  PermutationMode mode = PermutationMode::LabelPermute;
  std::size_t permutations = 1000;  // B
  std::uint64_t master_seed = 0;
  bool exact = false;
  std::size_t exact_cap = 1'000'000;
  std::size_t threads = 0;  // 0: default_threads()
};

/// Seed of Monte Carlo rearrangement b.
std::uint64_t permutation_seed(std::uint64_t master_seed, std::size_t b);

/// Labels rearranged by the seeded Fisher-Yates shuffle.
std::vector<int> permuted_labels(std::span<const int> labels, std::uint64_t seed);
/// A uniformly random permutation of 0..n-1.
std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed);

/// Number of distinct label rearrangements N! / prod n_k!, or of pairings
/// N!, saturated at cap + 1.
std::size_t count_label_assignments(std::span<const int> labels, std::size_t cap);
std::size_t count_pairings(std::size_t n, std::size_t cap);

/// Row-major table of vector-valued statistics. Row 0 is the observed
/// data; rows 1..draws are the rearrangements.
struct NullTable {
  std::size_t width = 0;
  std::size_t draws = 0;
  bool exact = false;
  std::vector<double> values;

  std::span<const double> row(std::size_t r) const { return {values.data() + r * width, width}; }
  double at(std::size_t r, std::size_t c) const { return values[r * width + c]; }
};

using LabelStatistic = std::function<void(std::span<const int> labels, std::span<double> out)>;
using PairStatistic = std::function<void(std::span<const std::size_t> y_order, std::span<double> out)>;

/// Evaluates `statistic` (width outputs) on the observed labels and on
/// each rearrangement. statistic must be re-entrant.
NullTable label_permutation_null(std::span<const int> labels, std::size_t width,
                                 const LabelStatistic& statistic, const PermutationPlan& plan);

/// Same for pairings: y_order[k] is the y row paired with x row k.
NullTable pair_permutation_null(std::size_t n, std::size_t width, const PairStatistic& statistic,
                                const PermutationPlan& plan);

/// p-value of column c: add-one convention in Monte Carlo mode, the
/// enumeration proportion in exact mode. `larger_is_extreme = false` flips
/// the tail.
double column_p_value(const NullTable& table, std::size_t c, bool larger_is_extreme = true);

/// For every row r and column c, the p-value row r would receive if it were
/// the observed data, against the same reference set (rows 0..B in Monte
/// Carlo mode, rows 1..T in exact mode). Row 0 reproduces column_p_value.
NullTable row_p_values(const NullTable& table);

struct PermutationResult {
  double p_value = 1.0;
  double observed = 0.0;
  std::vector<double> null_sample;
  bool exact = false;
};

PermutationResult permutation_pvalue(const std::function<double(const LabeledDataset&)>& statistic,
                                     const LabeledDataset& data, const PermutationPlan& plan);
PermutationResult permutation_pvalue(const std::function<double(const PairedDataset&)>& statistic,
                                     const PairedDataset& data, const PermutationPlan& plan);

/// Full enumeration of group assignments. Throws TooManyAssignments when
/// there are more than `cap`.
double exact_two_sample_pvalue(const std::function<double(const LabeledDataset&)>& statistic,
                               const LabeledDataset& data, std::size_t cap = 1'000'000);

}  // namespace mvproj
