#include "mvproj/generators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mvproj/random.hpp"

namespace mvproj {

std::string_view name(Generator generator) {
  switch (generator) {
    case Generator::NullGaussian: return "null-gaussian";
    case Generator::LocationShift: return "location-shift";
    case Generator::ScaleShift: return "scale-shift";
    case Generator::NullLogNormal: return "null-lognormal";
    case Generator::LinearDep: return "linear-dep";
    case Generator::QuadraticDep: return "quadratic-dep";
    case Generator::CircleDep: return "circle-dep";
    case Generator::NullIndep: return "null-indep";
  }
  return "unknown";
}

Generator parse_generator(std::string_view text) {
  for (Generator g : {Generator::NullGaussian, Generator::LocationShift, Generator::ScaleShift,
                      Generator::NullLogNormal, Generator::LinearDep, Generator::QuadraticDep,
                      Generator::CircleDep, Generator::NullIndep}) {
    if (text == name(g)) return g;
  }
  throw Error(ErrorCode::InvalidScenario, "unknown scenario '" + std::string(text) + "'");
}

bool is_independence_generator(Generator generator) {
  return generator == Generator::LinearDep || generator == Generator::QuadraticDep ||
         generator == Generator::CircleDep || generator == Generator::NullIndep;
}

void validate(const ScenarioSpec& s) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidScenario, what); };
  if (s.dim == 0 || s.dim_x == 0) fail("dimensions must be >= 1");
  if (s.groups < 2) fail("at least 2 groups are required");
  if (s.replications == 0) fail("replication count must be >= 1");
  if (s.sample_sizes.empty()) fail("sample-size grid is empty");
  if (!std::isfinite(s.shift)) fail("shift must be finite");
  if (!(s.scale_ratio > 0.0) || !std::isfinite(s.scale_ratio)) fail("scale ratio must be > 0");
  if (!(s.rho >= -1.0 && s.rho <= 1.0)) fail("rho must lie in [-1, 1]");
  if (!(s.noise >= 0.0) || !std::isfinite(s.noise)) fail("noise must be >= 0");
  const std::size_t min_n = is_independence_generator(s.generator)
                                ? 3
                                : static_cast<std::size_t>(s.groups);
  for (std::size_t n : s.sample_sizes) {
    if (n < min_n) fail("sample size " + std::to_string(n) + " is below the minimum " +
                        std::to_string(min_n));
  }
}

namespace {

LabeledDataset k_sample(const ScenarioSpec& s, std::size_t n, Rng& rng) {
  const auto k = static_cast<std::size_t>(s.groups);
  Matrix y(n, s.dim);
  std::vector<int> labels(n);
  std::size_t row = 0;
  for (std::size_t g = 0; g < k; ++g) {
    const std::size_t size = n / k + (g < n % k ? 1 : 0);
    const double offset = static_cast<double>(g) * s.shift;
    const double scale = std::pow(s.scale_ratio, static_cast<double>(g));
    for (std::size_t i = 0; i < size; ++i, ++row) {
      labels[row] = static_cast<int>(g + 1);
      for (std::size_t c = 0; c < s.dim; ++c) {
        const double e = rng.normal();
        double v = e;
        switch (s.generator) {
          case Generator::LocationShift: v = e + (c == 0 ? offset : 0.0); break;
          case Generator::ScaleShift: v = e * scale; break;
          case Generator::NullLogNormal: v = std::exp(e); break;
          default: break;
        }
        y(row, c) = v;
      }
    }
  }
  return LabeledDataset(std::move(y), std::move(labels), s.groups);
}

PairedDataset paired(const ScenarioSpec& s, std::size_t n, Rng& rng) {
  if (s.generator == Generator::CircleDep) {
    Matrix x(n, 1), y(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = 2.0 * std::numbers::pi * rng.uniform();
      x(i, 0) = std::cos(t) + s.noise * rng.normal();
      y(i, 0) = std::sin(t) + s.noise * rng.normal();
    }
    return PairedDataset(std::move(x), std::move(y));
  }

  Matrix x(n, s.dim_x), y(n, s.dim);
  const double resid = std::sqrt(1.0 - s.rho * s.rho);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < s.dim_x; ++c) {
      x(i, c) = s.generator == Generator::QuadraticDep ? 2.0 * rng.uniform() - 1.0 : rng.normal();
    }
    for (std::size_t c = 0; c < s.dim; ++c) {
      const double e = rng.normal();
      const double driver = x(i, c % s.dim_x);
      switch (s.generator) {
        case Generator::LinearDep: y(i, c) = s.rho * driver + resid * e; break;
        case Generator::QuadraticDep: y(i, c) = driver * driver + s.noise * e; break;
        default: y(i, c) = e; break;
      }
    }
  }
  return PairedDataset(std::move(x), std::move(y));
}

}  // namespace

Dataset generate(const ScenarioSpec& scenario, std::size_t n, std::uint64_t seed) {
  ScenarioSpec checked = scenario;
  checked.sample_sizes = {n};
  validate(checked);
  Rng rng(seed);
  if (is_independence_generator(scenario.generator)) return paired(scenario, n, rng);
  return k_sample(scenario, n, rng);
}

}  // namespace mvproj
