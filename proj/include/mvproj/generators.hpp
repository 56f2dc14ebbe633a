#pragma once

// Synthetic scenarios for level and power studies.

#include <cstdint>
#include <string_view>
#include <vector>

#include "mvproj/pipeline.hpp"

namespace mvproj {

enum class Generator {
  NullGaussian,   // K groups, all N(0, I_q)
  LocationShift,  // group k shifted by (k-1) * shift along the first axis
  ScaleShift,     // group k scaled by scale_ratio^(k-1)
  NullLogNormal,  // K groups, all with i.i.d. log-normal coordinates
  LinearDep,      // y_c = rho x_(c mod p) + sqrt(1 - rho^2) e_c
  QuadraticDep,   // x ~ U(-1,1)^p, y_c = x_(c mod p)^2 + noise e_c
  CircleDep,      // (cos t, sin t) plus noise; p = q = 1
  NullIndep,      // x ~ N(0, I_p) independent of y ~ N(0, I_q)
};

std::string_view name(Generator generator);
Generator parse_generator(std::string_view text);
bool is_independence_generator(Generator generator);

struct ScenarioSpec {
  Generator generator = Generator::NullGaussian;
  std::size_t dim = 2;    // q
  std::size_t dim_x = 1;  // p (independence scenarios)
  int groups = 2;         // K (K-sample scenarios)
  double shift = 0.5;
  double scale_ratio = 2.0;
  double rho = 0.5;
  double noise = 0.0;
  std::size_t replications = 100;                   // R
  std::vector<std::size_t> sample_sizes{50, 100, 200};  // total N per replication
};

/// Throws InvalidScenario for unusable parameters.
void validate(const ScenarioSpec& scenario);

/// Deterministic synthetic data with n observations in total (K-sample
/// scenarios split n as evenly as possible, earlier groups first).
Dataset generate(const ScenarioSpec& scenario, std::size_t n, std::uint64_t seed);

}  // namespace mvproj
