#include "mvproj/power.hpp"

#include <cmath>

#include "mvproj/parallel.hpp"
#include "mvproj/random.hpp"

namespace mvproj {

std::vector<PowerTable> power_study(const PipelineConfig& config, const ScenarioSpec& scenario,
                                    std::span<const PoolingRule> rules) {
  validate(config);
  validate(scenario);
  const bool indep_data = is_independence_generator(scenario.generator);
  if (indep_data != (config.problem == Problem::Independence)) {
    throw Error(ErrorCode::InvalidScenario, "scenario does not match the problem type");
  }
  std::vector<PoolingRule> pool_rules(rules.begin(), rules.end());
  if (pool_rules.empty()) pool_rules.push_back(config.pooling);

  std::vector<PowerTable> tables(pool_rules.size());
  for (std::size_t t = 0; t < tables.size(); ++t) tables[t].pooling = pool_rules[t];

  const std::size_t reps = scenario.replications;
  for (std::size_t g = 0; g < scenario.sample_sizes.size(); ++g) {
    const std::size_t n = scenario.sample_sizes[g];
    // rejected[r * rules + t]
    std::vector<char> rejected(reps * pool_rules.size(), 0);
    parallel_for(
        reps,
        [&](std::size_t r) {
          const Dataset data =
              generate(scenario, n, derive_seed(derive_seed(config.seed, kDataStream + g), r));
          PipelineConfig rep = config;
          rep.seed = derive_seed(derive_seed(config.seed, kTestStream + g), r);
          rep.threads = 1;
          const CenterNull null = compute_center_null(rep, data);
          for (std::size_t t = 0; t < pool_rules.size(); ++t) {
            const TestReport report = pool_center_null(rep, pool_rules[t], null);
            rejected[r * pool_rules.size() + t] = report.p_value <= config.alpha ? 1 : 0;
          }
        },
        config.threads);

    for (std::size_t t = 0; t < pool_rules.size(); ++t) {
      PowerRow row;
      row.n = n;
      row.replications = reps;
      for (std::size_t r = 0; r < reps; ++r) row.rejections += rejected[r * pool_rules.size() + t];
      row.rate = static_cast<double>(row.rejections) / static_cast<double>(reps);
      if (reps > 1) {
        row.standard_error = std::sqrt(row.rate * (1.0 - row.rate) / static_cast<double>(reps));
      }
      tables[t].rows.push_back(row);
    }
  }
  return tables;
}

}  // namespace mvproj
