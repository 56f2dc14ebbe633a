#include "mvproj/selftest.hpp"

#include <cmath>
#include <sstream>

#include "mvproj/pooling.hpp"
#include "mvproj/projection.hpp"
#include "mvproj/random.hpp"
#include "mvproj/reference.hpp"
#include "mvproj/simd/distance_kernels.hpp"
#include "mvproj/univariate.hpp"

namespace mvproj {

namespace {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    for (double& v : m.column(c)) v = rng.normal();
  }
  return m;
}

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

double psi(double a, double b, double c) { return (b <= a ? 1.0 : 0.0) - (c <= a ? 1.0 : 0.0); }

// Sum of the order-5 Hoeffding kernel over ordered 5-tuples, times 1/4.
long long hoeffding_kernel_sum(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  long long total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t m = 0; m < n; ++m) {
            if (i == j || i == k || i == l || i == m || j == k || j == l || j == m || k == l ||
                k == m || l == m)
              continue;
            total += static_cast<long long>(psi(x[i], x[j], x[k]) * psi(x[i], x[l], x[m]) *
                                            psi(y[i], y[j], y[k]) * psi(y[i], y[l], y[m]));
          }
  return total / 4;
}

double thas_direct(const std::vector<double>& x, const std::vector<double>& y) {
  double total = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    std::uint64_t t[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k == j) continue;
      const bool bx = x[k] <= x[j], by = y[k] <= y[j];
      ++t[bx ? (by ? 0 : 1) : (by ? 2 : 3)];
    }
    total += pearson_2x2(t[0], t[1], t[2], t[3]);
  }
  return total;
}

std::string diff_text(double worst) {
  std::ostringstream out;
  out << "max abs diff " << worst;
  return out.str();
}

SelfTestResult check(std::string name, bool ok, std::string detail = {}) {
  return SelfTestResult{std::move(name), ok, std::move(detail)};
}

}  // namespace

std::vector<SelfTestResult> run_selftest(std::uint64_t seed) {
  std::vector<SelfTestResult> results;
  Rng rng(seed);

  {
    bool ok = true;
    for (int trial = 0; trial < 10 && ok; ++trial) {
      const std::size_t n = 5 + rng.below(4);
      auto x = random_vector(rng, n), y = random_vector(rng, n);
      ok = hoeffding_numerator(x, y) == static_cast<__int128>(hoeffding_kernel_sum(x, y));
    }
    results.push_back(check("hoeffding fast path = order-5 kernel enumeration", ok));
  }
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 3 + rng.below(28);
      auto x = random_vector(rng, n), y = random_vector(rng, n);
      worst = std::max(worst, std::abs(thas_sum(x, y) - thas_direct(x, y)));
    }
    results.push_back(check("thas_sum fast path = direct double loop", worst <= 1e-12,
                            diff_text(worst)));
  }
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n1 = 1 + rng.below(20), n2 = 1 + rng.below(20);
      std::vector<int> labels(n1 + n2, 1);
      for (std::size_t i = n1; i < labels.size(); ++i) labels[i] = 2;
      LabeledDataset data(random_matrix(rng, n1 + n2, 3), labels, 2);
      double sum = 0.0;
      for (double s : energy_scores(data)) sum += s;
      worst = std::max(worst, std::abs(energy_stat(data) - sum));
    }
    results.push_back(check("energy statistic = sum of energy scores", worst <= 1e-10,
                            diff_text(worst)));
  }
  {
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 3 + rng.below(25);
      PairedDataset data(random_matrix(rng, n, 2), random_matrix(rng, n, 2));
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto proj = project_independence(
            CenterSpec{IndepCenter{data.x().row(i), data.y().row(i)}, SamplePointOrigin{i}}, data);
        sum += thas_sum(proj).value;
      }
      worst = std::max(worst, std::abs(hhg_stat(data) - sum));
    }
    results.push_back(check("HHG statistic = summed Thas-Ottoy over sample points",
                            worst <= 1e-10, diff_text(worst)));
  }
  {
    KernelSpec h{2, [](std::span<const DistancePair> p) {
                   return (p[0].u - p[1].u) * (p[0].v - p[1].v) + p[0].u * p[1].v + p[1].u * p[0].v;
                 }};
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 4 + rng.below(4);
      PairedDataset data(random_matrix(rng, n, 2), random_matrix(rng, n, 1));
      worst = std::max(worst, std::abs(u_statistic(u_lift(h), data) -
                                       mean_leave_one_out_u_statistic(h, data)));
    }
    results.push_back(check("U-statistic lift: order m+1 = mean leave-one-out order m",
                            worst <= 1e-12, diff_text(worst)));
  }
  {
    bool ok = true;
    const Matrix m = random_matrix(rng, 37, 5);
    const auto z = random_vector(rng, 5);
    std::vector<double> ref(m.rows()), got(m.rows());
    simd::distances(simd::Isa::Scalar, m.values().data(), m.rows(), m.cols(), z.data(), ref.data());
    std::ostringstream names;
    for (auto isa : simd::available_isas()) {
      simd::distances(isa, m.values().data(), m.rows(), m.cols(), z.data(), got.data());
      ok = ok && got == ref;
      names << simd::name(isa) << ' ';
    }
    results.push_back(check("SIMD distance kernels bit-identical to scalar", ok, names.str()));
  }
  {
    const double p2[] = {0.01, 0.5};
    const double p3[] = {0.01, 0.5, 0.9};
    const bool ok = hommel_global(p2) == 2.0 * 1.5 * 0.01 &&
                    std::abs(bonferroni_global(p3) - 0.03) < 1e-15 &&
                    bonferroni_global(std::span<const double>(p3 + 1, 2)) == 1.0;
    results.push_back(check("Bonferroni/Hommel worked examples", ok));
  }
  return results;
}

}  // namespace mvproj
