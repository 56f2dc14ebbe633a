#include "mvproj/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mvproj/parallel.hpp"
#include "mvproj/random.hpp"

namespace mvproj {

std::uint64_t permutation_seed(std::uint64_t master_seed, std::size_t b) {
  return derive_seed(master_seed, b);
}

std::vector<int> permuted_labels(std::span<const int> labels, std::uint64_t seed) {
  std::vector<int> out(labels.begin(), labels.end());
  Rng rng(seed);
  rng.shuffle(std::span<int>(out));
  return out;
}

std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(out));
  return out;
}

std::size_t count_label_assignments(std::span<const int> labels, std::size_t cap) {
  // N! / prod n_k! built as a product of binomials, saturating at cap + 1.
  std::vector<int> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  long double total = 1.0L;
  std::size_t placed = 0;
  std::size_t s = 0;
  while (s < sorted.size()) {
    std::size_t e = s;
    while (e < sorted.size() && sorted[e] == sorted[s]) ++e;
    const std::size_t k = e - s;
    for (std::size_t i = 1; i <= k; ++i) {
      total = total * static_cast<long double>(placed + i) / static_cast<long double>(i);
    }
    placed += k;
    if (total > static_cast<long double>(cap)) return cap + 1;
    s = e;
  }
  return static_cast<std::size_t>(std::llround(total));
}

std::size_t count_pairings(std::size_t n, std::size_t cap) {
  std::size_t total = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (total > (cap + 1) / i + 1) return cap + 1;
    total *= i;
    if (total > cap) return cap + 1;
  }
  return total;
}

namespace {

void check_plan(const PermutationPlan& plan, PermutationMode expected) {
  if (plan.mode != expected) {
    throw Error(ErrorCode::InvalidPlan, expected == PermutationMode::LabelPermute
                                            ? "label permutation requires K-sample data"
                                            : "pair permutation requires paired data");
  }
  if (!plan.exact && plan.permutations == 0) {
    throw Error(ErrorCode::InvalidPlan, "permutation count B must be >= 1");
  }
}

NullTable allocate(std::size_t width, std::size_t draws, bool exact) {
  NullTable t;
  t.width = width;
  t.draws = draws;
  t.exact = exact;
  t.values.assign((draws + 1) * width, 0.0);
  return t;
}

std::span<double> row_out(NullTable& t, std::size_t r) {
  return {t.values.data() + r * t.width, t.width};
}

}  // namespace

NullTable label_permutation_null(std::span<const int> labels, std::size_t width,
                                 const LabelStatistic& statistic, const PermutationPlan& plan) {
  check_plan(plan, PermutationMode::LabelPermute);
  if (plan.exact) {
    const std::size_t total = count_label_assignments(labels, plan.exact_cap);
    if (total > plan.exact_cap) {
      throw Error(ErrorCode::InvalidPlan, "exact mode needs at most " +
                                              std::to_string(plan.exact_cap) + " assignments");
    }
    NullTable t = allocate(width, total, true);
    statistic(labels, row_out(t, 0));
    std::vector<int> current(labels.begin(), labels.end());
    std::sort(current.begin(), current.end());
    std::size_t r = 1;
    do {
      statistic(current, row_out(t, r++));
    } while (std::next_permutation(current.begin(), current.end()));
    return t;
  }

  NullTable t = allocate(width, plan.permutations, false);
  statistic(labels, row_out(t, 0));
  parallel_for(
      plan.permutations,
      [&](std::size_t i) {
        const std::size_t b = i + 1;
        const auto shuffled = permuted_labels(labels, permutation_seed(plan.master_seed, b));
        statistic(shuffled, row_out(t, b));
      },
      plan.threads);
  return t;
}

NullTable pair_permutation_null(std::size_t n, std::size_t width, const PairStatistic& statistic,
                                const PermutationPlan& plan) {
  check_plan(plan, PermutationMode::PairPermute);
  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), std::size_t{0});

  if (plan.exact) {
    const std::size_t total = count_pairings(n, plan.exact_cap);
    if (total > plan.exact_cap) {
      throw Error(ErrorCode::InvalidPlan, "exact mode needs at most " +
                                              std::to_string(plan.exact_cap) + " pairings");
    }
    NullTable t = allocate(width, total, true);
    statistic(identity, row_out(t, 0));
    std::vector<std::size_t> current = identity;
    std::size_t r = 1;
    do {
      statistic(current, row_out(t, r++));
    } while (std::next_permutation(current.begin(), current.end()));
    return t;
  }

  NullTable t = allocate(width, plan.permutations, false);
  statistic(identity, row_out(t, 0));
  parallel_for(
      plan.permutations,
      [&](std::size_t i) {
        const std::size_t b = i + 1;
        const auto order = random_permutation(n, permutation_seed(plan.master_seed, b));
        statistic(order, row_out(t, b));
      },
      plan.threads);
  return t;
}

double column_p_value(const NullTable& table, std::size_t c, bool larger_is_extreme) {
  const double observed = table.at(0, c);
  std::size_t count = 0;
  for (std::size_t r = 1; r <= table.draws; ++r) {
    const double v = table.at(r, c);
    if (larger_is_extreme ? v >= observed : v <= observed) ++count;
  }
  if (table.exact) return static_cast<double>(count) / static_cast<double>(table.draws);
  return static_cast<double>(count + 1) / static_cast<double>(table.draws + 1);
}

NullTable row_p_values(const NullTable& table) {
  NullTable out;
  out.width = table.width;
  out.draws = table.draws;
  out.exact = table.exact;
  out.values.assign(table.values.size(), 0.0);

  // Reference set: rows 0..B (Monte Carlo, add-one) or 1..T (exact).
  const std::size_t first = table.exact ? 1 : 0;
  const std::size_t ref_size = table.draws + 1 - first;
  std::vector<double> sorted(ref_size);
  for (std::size_t c = 0; c < table.width; ++c) {
    for (std::size_t r = first; r <= table.draws; ++r) sorted[r - first] = table.at(r, c);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t r = 0; r <= table.draws; ++r) {
      const double v = table.at(r, c);
      const auto at_least = static_cast<std::size_t>(
          sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), v));
      out.values[r * out.width + c] = static_cast<double>(at_least) / static_cast<double>(ref_size);
    }
  }
  return out;
}

PermutationResult permutation_pvalue(const std::function<double(const LabeledDataset&)>& statistic,
                                     const LabeledDataset& data, const PermutationPlan& plan) {
  const NullTable t = label_permutation_null(
      data.labels(), 1,
      [&](std::span<const int> labels, std::span<double> out) {
        out[0] = statistic(data.with_labels(std::vector<int>(labels.begin(), labels.end())));
      },
      plan);
  PermutationResult res;
  res.observed = t.at(0, 0);
  res.p_value = column_p_value(t, 0);
  res.exact = t.exact;
  res.null_sample.assign(t.values.begin() + 1, t.values.end());
  return res;
}

PermutationResult permutation_pvalue(const std::function<double(const PairedDataset&)>& statistic,
                                     const PairedDataset& data, const PermutationPlan& plan) {
  const NullTable t = pair_permutation_null(
      data.size(), 1,
      [&](std::span<const std::size_t> order, std::span<double> out) {
        out[0] = statistic(data.with_y_order(order));
      },
      plan);
  PermutationResult res;
  res.observed = t.at(0, 0);
  res.p_value = column_p_value(t, 0);
  res.exact = t.exact;
  res.null_sample.assign(t.values.begin() + 1, t.values.end());
  return res;
}

double exact_two_sample_pvalue(const std::function<double(const LabeledDataset&)>& statistic,
                               const LabeledDataset& data, std::size_t cap) {
  if (count_label_assignments(data.labels(), cap) > cap) {
    throw Error(ErrorCode::TooManyAssignments,
                "more than " + std::to_string(cap) + " group assignments");
  }
  PermutationPlan plan;
  plan.mode = PermutationMode::LabelPermute;
  plan.exact = true;
  plan.exact_cap = cap;
  return permutation_pvalue(statistic, data, plan).p_value;
}

}  // namespace mvproj
