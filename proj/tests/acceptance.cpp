// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion passes.
//
// Usage: mvproj_acceptance [path-to-mvproj-cli] [--only N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mvproj/generators.hpp"
#include "mvproj/parallel.hpp"
#include "mvproj/permutation.hpp"
#include "mvproj/pipeline.hpp"
#include "mvproj/pooling.hpp"
#include "mvproj/power.hpp"
#include "mvproj/projection.hpp"
#include "mvproj/reference.hpp"
#include "mvproj/report.hpp"
#include "mvproj/univariate.hpp"
#include "oracles.hpp"

using namespace mvproj;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::string g_cli_path;

// Criterion 1 ---------------------------------------------------------------

Outcome oracle_equivalence() {
  Rng rng(101);
  const int instances = 200;
  int ks_bad = 0, cvm_bad = 0, hoeff_bad = 0, thas_bad = 0;
  double worst = 0.0;
  for (int t = 0; t < instances; ++t) {
    const bool ties = t % 2 == 0;

    const std::size_t n = 2 + rng.below(29);
    const std::size_t n1 = 1 + rng.below(n - 1);
    const auto d = ties ? oracle::small_ints(rng, n, 6) : oracle::normals(rng, n);
    auto labels = oracle::two_groups(n1, n - n1);
    rng.shuffle(std::span<int>(labels));
    const double ks_diff = std::abs(ks_two_sample(d, labels) - oracle::ks(d, labels));
    const double cvm_diff = std::abs(cvm_two_sample(d, labels) - oracle::cvm(d, labels));
    ks_bad += ks_diff > 1e-12;
    cvm_bad += cvm_diff > 1e-12;

    const std::size_t m = 5 + rng.below(26);
    const auto x = ties ? oracle::small_ints(rng, m, 5) : oracle::normals(rng, m);
    const auto y = ties ? oracle::small_ints(rng, m, 4) : oracle::normals(rng, m);
    const long long kernel = oracle::hoeffding_kernel_sum(x, y);
    hoeff_bad += static_cast<long long>(hoeffding_numerator(x, y)) != kernel;
    if (!ties) hoeff_bad += oracle::hoeffding_rank_form(x, y) != kernel;
    const double thas_diff = std::abs(thas_sum(x, y) - oracle::thas(x, y));
    thas_bad += thas_diff > 1e-12;
    worst = std::max({worst, ks_diff, cvm_diff, thas_diff});
  }
  return {ks_bad + cvm_bad + hoeff_bad + thas_bad == 0,
          fmt("%d instances, N<=30; mismatches ks=%d cvm=%d hoeffding=%d (integer) thas=%d; max abs diff %.2e",
              instances, ks_bad, cvm_bad, hoeff_bad, thas_bad, worst)};
}

// Criterion 2 ---------------------------------------------------------------

Outcome energy_identity() {
  Rng rng(202);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.below(99);
    const std::size_t n1 = 1 + rng.below(n - 1);
    auto labels = oracle::two_groups(n1, n - n1);
    rng.shuffle(std::span<int>(labels));
    const LabeledDataset data(oracle::normal_matrix(rng, n, 1 + rng.below(5)), labels, 2);
    double sum = 0.0;
    for (double s : energy_scores(data)) sum += s;
    worst = std::max(worst, std::abs(energy_stat(data) - sum));
  }
  return {worst <= 1e-10, fmt("100 instances, N<=100; max |E - sum S_i| = %.2e (tol 1e-10)", worst)};
}

// Criterion 3 ---------------------------------------------------------------

Outcome hhg_identity() {
  Rng rng(303);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = t == 0 ? 3 : t == 1 ? 50 : 3 + rng.below(48);
    const PairedDataset data(oracle::normal_matrix(rng, n, 1 + rng.below(3)), oracle::normal_matrix(rng, n, 1 + rng.below(3)));
    double sum = 0.0;
    for (const auto& c : sample_centers(SamplePoints{}, data, 0)) sum += thas_sum(project_independence(c, data)).value;
    worst = std::max(worst, std::abs(hhg_stat(data) - sum));
  }
  return {worst <= 1e-10, fmt("50 instances, N in [3,50]; max |HHG - sum thas| = %.2e (tol 1e-10)", worst)};
}

// Criterion 4 ---------------------------------------------------------------

Outcome u_lift_identity() {
  const KernelSpec order1{1, [](std::span<const DistancePair> p) { return p[0].u * p[0].v + 0.5 * p[0].u; }};
  const KernelSpec order2{2, [](std::span<const DistancePair> p) {
                            return std::abs(p[0].u - p[1].u) * std::abs(p[0].v - p[1].v) + p[0].v * p[1].v;
                          }};
  Rng rng(404);
  double worst = 0.0;
  for (const KernelSpec* h : {&order1, &order2}) {
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = h->order + 2 + rng.below(8 - h->order - 1);
      const PairedDataset data(oracle::normal_matrix(rng, n, 1 + rng.below(3)), oracle::normal_matrix(rng, n, 1 + rng.below(3)));
      worst = std::max(worst, std::abs(u_statistic(u_lift(*h), data) - mean_leave_one_out_u_statistic(*h, data)));
    }
  }
  return {worst <= 1e-12, fmt("m in {1,2}, 50 instances each, N<=8; max abs diff %.2e (tol 1e-12)", worst)};
}

// Criterion 5 ---------------------------------------------------------------

std::vector<double> null_p_values(Generator generator, std::uint64_t seed_base) {
  ScenarioSpec s;
  s.generator = generator;
  s.dim = 2;
  PipelineConfig config;
  config.problem = Problem::TwoSample;
  config.centers = UniformBoundingBox{10, 0.1};
  config.test = TestId::CVM;
  config.pooling = PoolingRule::SumStat;
  config.permutations = 199;
  config.threads = 1;
  std::vector<double> p(2000);
  parallel_for(p.size(), [&](std::size_t r) {
    PipelineConfig c = config;
    c.seed = derive_seed(seed_base, 2 * r + 1);
    p[r] = run_pipeline(c, generate(s, 40, derive_seed(seed_base, 2 * r))).p_value;
  });
  return p;
}

std::vector<double> g_gaussian_p;

Outcome permutation_validity() {
  Rng rng(505);
  int agree = 0;
  double worst_z = 0.0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n1 = t % 2 ? 4 : 3;
    const LabeledDataset data(oracle::normal_matrix(rng, 8, 2), oracle::two_groups(n1, 8 - n1), 2);
    const double exact = exact_two_sample_pvalue(energy_stat, data);
    PermutationPlan plan;
    plan.permutations = 10000;
    plan.master_seed = 9000 + t;
    const double mc = permutation_pvalue(energy_stat, data, plan).p_value;
    const double se = std::sqrt(exact * (1 - exact) / 10000.0);
    const double diff = std::abs(mc - exact);
    agree += diff <= 3 * se;
    if (se > 0) worst_z = std::max(worst_z, diff / se);
  }

  g_gaussian_p = null_p_values(Generator::NullGaussian, 5050);
  bool level_ok = true;
  std::string rates;
  for (double alpha : {0.01, 0.05, 0.1}) {
    const double rate =
        static_cast<double>(std::count_if(g_gaussian_p.begin(), g_gaussian_p.end(), [&](double p) { return p <= alpha; })) /
        g_gaussian_p.size();
    const double se = std::sqrt(alpha * (1 - alpha) / g_gaussian_p.size());
    level_ok = level_ok && rate >= alpha - 3 * se && rate <= alpha + 3 * se;
    rates += fmt(" a=%.2f:%.4f", alpha, rate);
  }
  return {agree == 20 && level_ok,
          fmt("exact vs MC (B=1e4) within 3se on %d/20 N=8 instances (max %.2f se); level R=2000:", agree, worst_z) +
              rates};
}

// Criterion 6 ---------------------------------------------------------------

Outcome consistency_trend() {
  ScenarioSpec s;
  s.generator = Generator::LocationShift;
  s.dim = 3;
  s.shift = 0.5;
  s.replications = 500;
  s.sample_sizes = {50, 100, 200};
  PipelineConfig config;
  config.problem = Problem::TwoSample;
  config.centers = UniformBoundingBox{20, 0.1};
  config.test = TestId::KS;
  config.permutations = 500;
  config.alpha = 0.05;
  config.seed = 606;
  const std::vector<PoolingRule> rules{PoolingRule::MinP,       PoolingRule::MaxStat,          PoolingRule::SumStat,
                                       PoolingRule::FisherLogP, PoolingRule::BonferroniGlobal, PoolingRule::HommelGlobal};
  const auto tables = power_study(config, s, rules);
  bool ok = true;
  std::string detail;
  for (const auto& table : tables) {
    const auto& r = table.rows;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      const double se = std::sqrt(std::pow(r[i].standard_error.value_or(0), 2) + std::pow(r[i + 1].standard_error.value_or(0), 2));
      ok = ok && r[i + 1].rate >= r[i].rate - 2 * se;
    }
    ok = ok && r.back().rate - r.front().rate >= 0.1;
    detail += fmt(" %s=%.3f/%.3f/%.3f", std::string(name(table.pooling)).c_str(), r[0].rate, r[1].rate, r[2].rate);
  }
  return {ok, "rates at N=50/100/200:" + detail};
}

// Criterion 7 ---------------------------------------------------------------

// Asymptotic Kolmogorov tail probability P(K > lambda).
double kolmogorov_tail(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda) * (k % 2 ? 1.0 : -1.0);
    sum += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

Outcome distribution_freeness() {
  if (g_gaussian_p.empty()) g_gaussian_p = null_p_values(Generator::NullGaussian, 5050);
  const auto lognormal_p = null_p_values(Generator::NullLogNormal, 7070);
  std::vector<double> pooled = g_gaussian_p;
  pooled.insert(pooled.end(), lognormal_p.begin(), lognormal_p.end());
  std::vector<int> labels(pooled.size(), 1);
  std::fill(labels.begin() + static_cast<std::ptrdiff_t>(g_gaussian_p.size()), labels.end(), 2);
  const double d = oracle::ks(pooled, labels);
  const double ne = g_gaussian_p.size() * lognormal_p.size() / static_cast<double>(pooled.size());
  const double p = kolmogorov_tail((std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d);
  return {p > 0.01, fmt("CvM+SumStat null p-values, Gaussian vs log-normal, R=2000 each: KS D=%.4f, p=%.3f (need > 0.01)", d, p)};
}

// Criterion 8 ---------------------------------------------------------------

Outcome hoeffding_complexity() {
  Rng rng(808);
  std::vector<double> log_n, log_t;
  std::string detail;
  for (std::size_t n : {10'000u, 100'000u, 1'000'000u}) {
    const auto x = oracle::normals(rng, n), y = oracle::normals(rng, n);
    double best = 1e300;
    volatile double sink = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      sink = sink + hoeffding_d(x, y);
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    log_n.push_back(std::log(static_cast<double>(n)));
    log_t.push_back(std::log(best));
    detail += fmt(" N=%zu:%.4fs", n, best);
  }
  const double mx = (log_n[0] + log_n[1] + log_n[2]) / 3, my = (log_t[0] + log_t[1] + log_t[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) {
    sxy += (log_n[i] - mx) * (log_t[i] - my);
    sxx += (log_n[i] - mx) * (log_n[i] - mx);
  }
  const double slope = sxy / sxx;
  return {slope < 1.3, fmt("fitted exponent %.3f (need < 1.3);", slope) + detail};
}

// Criterion 9 ---------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  ScenarioSpec s;
  s.generator = Generator::LinearDep;
  s.dim = 2;
  s.dim_x = 2;
  s.rho = 0.3;
  s.replications = 60;
  s.sample_sizes = {30, 60};
  PipelineConfig config;
  config.problem = Problem::Independence;
  config.centers = GaussianMomentFit{8};
  config.test = TestId::HoeffdingD;
  config.permutations = 99;
  config.seed = 909;
  const std::vector<PoolingRule> rules{PoolingRule::MinP, PoolingRule::FisherLogP, PoolingRule::HommelGlobal};
  config.threads = 1;
  const std::string one = power_to_json(config, s, power_study(config, s, rules)).dump(2);
  config.threads = 4;
  const std::string four = power_to_json(config, s, power_study(config, s, rules)).dump(2);
  bool ok = one == four;
  std::string detail = fmt("library power report %s (%zu bytes)", ok ? "identical" : "DIFFERS", one.size());

  if (!g_cli_path.empty()) {
    const std::string base = g_cli_path + " power --scenario location-shift --dim 3 --delta 0.5 --reps 50"
                             " --n-grid 40,80 --centers 8 --perms 199 --pools minp,sumstat,bonferroni --seed 99";
    const std::string f1 = "acceptance_power_t1.json", f4 = "acceptance_power_t4.json";
    const int rc1 = std::system((base + " --threads 1 --output " + f1).c_str());
    const int rc4 = std::system((base + " --threads 4 --output " + f4).c_str());
    const std::string a = read_file(f1), b = read_file(f4);
    const bool cli_ok = rc1 == 0 && rc4 == 0 && !a.empty() && a == b;
    ok = ok && cli_ok;
    detail += fmt("; CLI power --threads 1 vs 4 %s (%zu bytes)", cli_ok ? "identical" : "DIFFER", a.size());
  } else {
    detail += "; CLI path not given, CLI run skipped";
  }
  return {ok, detail};
}

// Criterion 10 --------------------------------------------------------------

Outcome worked_examples() {
  struct Case {
    const char* label;
    double got;
    double want;
  };
  const std::vector<Case> cases{
      {"bonferroni [0.01,0.5,0.9]", bonferroni_global(std::vector<double>{0.01, 0.5, 0.9}), 0.03},
      {"bonferroni [0.5,0.9]", bonferroni_global(std::vector<double>{0.5, 0.9}), 1.0},
      {"bonferroni [0.2]", bonferroni_global(std::vector<double>{0.2}), 0.2},
      {"hommel [0.04]", hommel_global(std::vector<double>{0.04}), 0.04},
      {"hommel [0.01,0.5]", hommel_global(std::vector<double>{0.01, 0.5}), 0.03},
      {"hommel [0.02 x4]", hommel_global(std::vector<double>(4, 0.02)), harmonic_number(4) * 0.02},
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const bool hit = c.got == c.want;
    ok = ok && hit;
    detail += fmt(" %s->%.17g%s;", c.label, c.got, hit ? "" : " (MISMATCH)");
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      g_cli_path = arg;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence of ks, cvm, hoeffding_d, thas_sum", oracle_equivalence},
      {"energy statistic = sum of energy scores", energy_identity},
      {"HHG = summed Thas-Ottoy over sample points", hhg_identity},
      {"U-statistic lift identity", u_lift_identity},
      {"permutation validity (exact vs Monte Carlo, level)", permutation_validity},
      {"consistency trend over N for six pooling rules", consistency_trend},
      {"distribution-freeness of null p-values", distribution_freeness},
      {"Hoeffding fast path runtime exponent", hoeffding_complexity},
      {"determinism across thread counts", determinism},
      {"Bonferroni/Hommel worked examples", worked_examples},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !out.passed;
    std::printf("criterion %2zu %s  %s [%.1fs]: %s\n", i + 1, out.passed ? "PASS" : "FAIL", criteria[i].first, secs,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
