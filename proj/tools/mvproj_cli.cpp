// mvproj: distance-projection tests for the K-sample and independence
// problems, plus power studies and the built-in self test.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mvproj/csv_io.hpp"
#include "mvproj/generators.hpp"
#include "mvproj/parallel.hpp"
#include "mvproj/pipeline.hpp"
#include "mvproj/power.hpp"
#include "mvproj/projection.hpp"
#include "mvproj/report.hpp"
#include "mvproj/selftest.hpp"

namespace {

using namespace mvproj;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  std::string label_col = "group";
  std::string x_cols;
  std::string y_cols;
  std::string centers;
  std::string center_strategy = "bbox";
  double expansion = 0.1;
  std::string test;
  std::string pool = "minp";
  std::string pools;
  std::size_t perms = 1000;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  bool exact = false;
  bool jitter = false;
  std::size_t threads = 0;
  bool no_timing = false;

  std::string scenario = "null-gaussian";
  std::size_t dim = 2;
  std::size_t dim_x = 1;
  int groups = 2;
  double shift = 0.5;
  double scale_ratio = 2.0;
  double rho = 0.5;
  double noise = 0.0;
  std::size_t reps = 100;
  std::string n_grid = "50,100,200";
  std::size_t n = 100;
};

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_names(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) {
      throw Error(ErrorCode::InvalidConfig, "not a number: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "--centers" holds a count for sampled strategies and a point list for
// the fixed strategy: "z1;z2;..." with z = "a,b,..", or "zx|zy" per point
// for independence.
CenterStrategy center_strategy(const Options& o, Problem problem) {
  const std::string& kind = o.center_strategy;
  if (kind == "sample-points") return SamplePoints{};
  if (kind == "fixed") {
    if (o.centers.empty()) {
      throw Error(ErrorCode::InvalidConfig, "fixed centers need --centers \"a,b;c,d\"");
    }
    FixedList list;
    for (const auto& point : split_on(o.centers, ';')) {
      if (problem == Problem::Independence) {
        const auto halves = split_on(point, '|');
        if (halves.size() != 2) {
          throw Error(ErrorCode::InvalidConfig, "independence centers are written \"x..|y..\"");
        }
        list.centers.push_back(CenterSpec::fixed(parse_numbers(halves[0]), parse_numbers(halves[1])));
      } else {
        list.centers.push_back(CenterSpec::fixed(parse_numbers(point)));
      }
    }
    return list;
  }
  std::size_t count = 50;
  if (!o.centers.empty()) {
    const auto values = parse_numbers(o.centers);
    if (values.size() != 1 || values[0] < 1 || values[0] != static_cast<double>(static_cast<std::size_t>(values[0]))) {
      throw Error(ErrorCode::InvalidConfig, "--centers must be a positive integer count for '" + kind + "'");
    }
    count = static_cast<std::size_t>(values[0]);
  }
  if (kind == "bbox") return UniformBoundingBox{count, o.expansion};
  if (kind == "gauss") return GaussianMomentFit{count};
  throw Error(ErrorCode::InvalidConfig, "unknown center strategy '" + kind + "'");
}

TestId default_test(Problem problem) {
  switch (problem) {
    case Problem::TwoSample: return TestId::KS;
    case Problem::KSample: return TestId::KruskalWallis;
    case Problem::Independence: return TestId::HoeffdingD;
  }
  return TestId::KS;
}

PipelineConfig pipeline_config(const Options& o, Problem problem) {
  PipelineConfig config;
  config.problem = problem;
  config.centers = center_strategy(o, problem);
  config.test = o.test.empty() ? default_test(problem) : parse_test(o.test);
  config.pooling = parse_pooling(o.pool);
  config.permutations = o.perms;
  config.seed = o.seed;
  config.alpha = o.alpha;
  config.exact = o.exact;
  config.jitter = o.jitter;
  config.threads = o.threads;
  validate(config);
  return config;
}

void check_format(const Options& o) {
  if (o.format != "json" && o.format != "csv") {
    throw Error(ErrorCode::InvalidConfig, "--format must be json or csv");
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::Io, "cannot write '" + o.output + "'");
}

void warn_degenerate(const Dataset& data) {
  if (const auto* labeled = std::get_if<LabeledDataset>(&data)) {
    if (has_degenerate_support(labeled->y())) {
      std::cerr << "warning: all observations coincide; every center sees the same distance\n";
    }
  }
}

int run_test(const Options& o, Problem problem) {
  check_format(o);
  const PipelineConfig config = pipeline_config(o, problem);
  if (o.input.empty()) throw Error(ErrorCode::InvalidConfig, "--input is required");
  const CsvTable table = read_csv_file(o.input);

  Dataset data = problem == Problem::Independence
                     ? Dataset(paired_from_csv(table, split_names(o.x_cols), split_names(o.y_cols)))
                     : Dataset(labeled_from_csv(table, o.label_col, split_names(o.y_cols)));
  if (problem == Problem::KSample && std::get<LabeledDataset>(data).num_groups() < 2) {
    throw Error(ErrorCode::EmptyGroup, "K-sample data needs at least two groups");
  }
  warn_degenerate(data);

  const TestReport report = run_pipeline(config, data);
  emit(o, o.format == "json" ? to_json(report, !o.no_timing).dump(2) + "\n" : report_csv(report));
  return kExitOk;
}

ScenarioSpec scenario_spec(const Options& o) {
  ScenarioSpec s;
  s.generator = parse_generator(o.scenario);
  s.dim = o.dim;
  s.dim_x = o.dim_x;
  s.groups = o.groups;
  s.shift = o.shift;
  s.scale_ratio = o.scale_ratio;
  s.rho = o.rho;
  s.noise = o.noise;
  s.replications = o.reps;
  s.sample_sizes.clear();
  for (double v : parse_numbers(o.n_grid)) {
    if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw Error(ErrorCode::InvalidScenario, "--n-grid entries must be positive integers");
    }
    s.sample_sizes.push_back(static_cast<std::size_t>(v));
  }
  validate(s);
  return s;
}

Problem scenario_problem(const ScenarioSpec& s) {
  if (is_independence_generator(s.generator)) return Problem::Independence;
  return s.groups == 2 ? Problem::TwoSample : Problem::KSample;
}

int run_power(const Options& o) {
  check_format(o);
  const ScenarioSpec scenario = scenario_spec(o);
  const PipelineConfig config = pipeline_config(o, scenario_problem(scenario));
  std::vector<PoolingRule> rules;
  for (const auto& rule : split_names(o.pools)) rules.push_back(parse_pooling(rule));
  const auto tables = power_study(config, scenario, rules);
  emit(o, o.format == "json" ? power_to_json(config, scenario, tables).dump(2) + "\n"
                             : power_csv(tables));
  return kExitOk;
}

int run_generate(const Options& o) {
  const ScenarioSpec scenario = scenario_spec(o);
  const Dataset data = generate(scenario, o.n, o.seed);
  std::ostringstream out;
  if (const auto* labeled = std::get_if<LabeledDataset>(&data)) {
    write_labeled_csv(out, *labeled);
  } else {
    write_paired_csv(out, std::get<PairedDataset>(data));
  }
  emit(o, out.str());
  return kExitOk;
}

int run_selftest(const Options& o) {
  bool all = true;
  for (const auto& r : mvproj::run_selftest(o.seed)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << '\n';
    all = all && r.passed;
  }
  return all ? kExitOk : kExitFailure;
}

void add_data_options(CLI::App& app, Options& o) {
  app.add_option("--input", o.input, "input CSV file");
  app.add_option("--output", o.output, "output file (default: stdout)");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--label-col", o.label_col, "group column for K-sample data");
  app.add_option("--x-cols", o.x_cols, "comma-separated x columns (independence)");
  app.add_option("--y-cols", o.y_cols, "comma-separated observation columns");
}

void add_method_options(CLI::App& app, Options& o) {
  app.add_option("--centers", o.centers,
                 "center count M (bbox, gauss; default 50) or fixed points \"a,b;c,d\" (\"x..|y..\" for independence)");
  app.add_option("--center-strategy", o.center_strategy, "fixed, bbox, gauss or sample-points")
      ->check(CLI::IsMember({"fixed", "bbox", "gauss", "sample-points"}));
  app.add_option("--expansion", o.expansion, "bounding-box widening fraction");
  app.add_option("--test", o.test, "ks, cvm, kw, hoeffding or thas")
      ->check(CLI::IsMember({"ks", "cvm", "hoeffding", "thas", "kw"}));
  app.add_option("--pool", o.pool, "pooling rule")
      ->check(CLI::IsMember({"minp", "maxp", "fisher", "sumstat", "maxstat", "meanstat", "bonferroni", "hommel"}));
  app.add_option("--perms", o.perms, "permutations B");
  app.add_option("--seed", o.seed, "master seed")->envname("MVPROJ_SEED");
  app.add_option("--alpha", o.alpha, "significance level");
  app.add_flag("--exact", o.exact, "enumerate every rearrangement");
  app.add_flag("--jitter", o.jitter, "break ties with tiny seeded noise");
  app.add_option("--threads", o.threads, "worker threads (0: automatic)");
  app.add_flag("--no-timing", o.no_timing, "write runtime_ms as 0");
}

void add_scenario_options(CLI::App& app, Options& o) {
  app.add_option("--scenario", o.scenario,
                 "null-gaussian, location-shift, scale-shift, null-lognormal, linear-dep, "
                 "quadratic-dep, circle-dep or null-indep");
  app.add_option("--dim", o.dim, "dimension q");
  app.add_option("--dim-x", o.dim_x, "x dimension p (independence)");
  app.add_option("--groups", o.groups, "number of groups K");
  app.add_option("--shift,--delta", o.shift, "location shift");
  app.add_option("--scale-ratio", o.scale_ratio, "scale ratio between consecutive groups");
  app.add_option("--rho", o.rho, "dependence strength");
  app.add_option("--noise", o.noise, "noise level");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Distance-projection tests for multivariate K-sample and independence problems"};
  app.set_config("--config", "", "flat key=value file mirroring the flags; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  add_data_options(app, o);
  add_method_options(app, o);
  add_scenario_options(app, o);
  app.add_option("--pools", o.pools, "comma-separated pooling rules (power; default: --pool)");
  app.add_option("--reps", o.reps, "replications R (power)");
  app.add_option("--n-grid", o.n_grid, "comma-separated total sample sizes (power)");
  app.add_option("--n", o.n, "total sample size (generate)");

  auto* two = app.add_subcommand("two-sample", "two-sample test on labeled CSV data");
  auto* ksample = app.add_subcommand("k-sample", "K-sample test on labeled CSV data");
  auto* indep = app.add_subcommand("independence", "independence test on paired CSV data");
  auto* power = app.add_subcommand("power", "rejection rates over a sample-size grid");
  auto* gen = app.add_subcommand("generate", "write a synthetic scenario as CSV");
  auto* self = app.add_subcommand("selftest", "run the built-in identity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (o.threads > 0) set_default_threads(o.threads);
    if (*two) return run_test(o, Problem::TwoSample);
    if (*ksample) return run_test(o, Problem::KSample);
    if (*indep) return run_test(o, Problem::Independence);
    if (*power) return run_power(o);
    if (*gen) return run_generate(o);
    if (*self) return run_selftest(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Io ? kExitFailure : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitInvalid;
}
