// Prints the reference-oracle statistics behind the pinned constants in
// acceptance_main.cpp, next to the library's own numbers for the same
// configurations. Run by hand when re-deriving thresholds.

#include <cstdio>

#include "cachesim/bounds.hpp"
#include "cachesim/harness.hpp"
#include "reference_oracle.hpp"

namespace {

void print_stats(const char* label, const refsim::Stats& stats) {
  std::printf("%-44s mean=%8.3f stderr=%7.3f zero%%=%5.1f\n", label, stats.mean,
              stats.stderr_mean, 100.0 * stats.zero_fraction);
}

refsim::Params fig4_point(int n, int divisor) {
  refsim::Params params;
  params.m = n;
  params.n = n;
  params.beta = 0.3;
  params.rho = 0.97;
  params.m1 = (params.m + divisor - 1) / divisor;
  params.k = static_cast<int>((3LL * n - (params.m - params.m1)) / params.m1);
  return params;
}

refsim::Params fig6_point(int m, int divisor) {
  refsim::Params params;
  params.m = m;
  params.n = 5 * m;
  params.beta = 1.2;
  params.rho = 0.97;
  params.delta = 0.5;
  params.m1 = (m + divisor - 1) / divisor;
  params.k = static_cast<int>((3LL * params.n - (m - params.m1)) / params.m1);
  return params;
}

}  // namespace

int main() {
  const int trials = 100;
  const std::uint64_t seed = 99;

  std::printf("== Proportional placement, beta 0.3, M = 3n, n = m = 400 ==\n");
  refsim::Stats hom, het;
  for (int divisor : {1, 2, 10, 20}) {
    const refsim::Params params = fig4_point(400, divisor);
    const refsim::Stats stats = refsim::mean_rate_ppmm(params, trials, seed + divisor);
    char label[64];
    std::snprintf(label, sizeof(label), "ppmm n=400 m1=m/%d (m1=%d,k=%d)",
                  divisor, params.m1, params.k);
    print_stats(label, stats);
    if (divisor == 1) hom = stats;
    if (divisor == 20) het = stats;
  }
  if (hom.mean > 0)
    std::printf("het/hom mean ratio: %.2f\n", het.mean / hom.mean);
  else
    std::printf("hom mean is zero; het mean %.3f\n", het.mean);
  const double mid = (het.mean + hom.mean) / 2.0;
  std::printf("relative spread (max-min)/midmean: %.3f\n\n",
              (het.mean - hom.mean) / mid);

  std::printf("== Rich-cache-size sweep, beta 0.3, n = m = 400 ==\n");
  for (int divisor : {1, 2, 4, 8}) {
    for (int k : {16, 20, 24, 32}) {
      refsim::Params params;
      params.m = params.n = 400;
      params.beta = 0.3;
      params.rho = 0.97;
      params.m1 = (params.m + divisor - 1) / divisor;
      params.k = k;
      const refsim::Stats stats =
          refsim::mean_rate_ppmm(params, trials, seed + 31 * divisor + k);
      char label[64];
      std::snprintf(label, sizeof(label), "ppmm m1=m/%d k=%d", divisor, k);
      print_stats(label, stats);
    }
  }
  std::printf("\n== Knapsack + least popular, beta 1.2, n = 5m, M = 3n, m = 400 ==\n");
  double ks_min = 1e18, ks_max = -1e18;
  for (int divisor : {1, 10, 20, 40}) {
    const refsim::Params params = fig6_point(400, divisor);
    const refsim::Stats stats =
        refsim::mean_rate_ksmlp(params, trials, seed + 7 * divisor);
    char label[64];
    std::snprintf(label, sizeof(label), "ksmlp m=400 m1=m/%d (m1=%d,k=%d)",
                  divisor, params.m1, params.k);
    print_stats(label, stats);
    ks_min = std::min(ks_min, stats.mean);
    ks_max = std::max(ks_max, stats.mean);
  }
  std::printf("relative spread (max-min)/midmean: %.3f\n\n",
              (ks_max - ks_min) / ((ks_max + ks_min) / 2.0));

  std::printf("== Vanishing-rate memory regime, beta 0.3, m = n = 200 ==\n");
  {
    refsim::Params params;
    params.m = params.n = 200;
    params.beta = 0.3;
    params.rho = 0.97;
    params.m1 = 200;
    // ceil(3 n ln m) = 3179; homogeneous slots round up to k = 16.
    params.k = 16;
    const refsim::Stats stats = refsim::mean_rate_ppmm(params, trials, seed);
    print_stats("ppmm m=n=200 k=16 (M=3200)", stats);
  }

  std::printf("\n== Library cross-check (same configs, library seeds) ==\n");
  {
    cachesim::ExperimentSpec spec = cachesim::preset_fig4();
    spec.values = {400};
    spec.master_seed = 7;
    const auto result = cachesim::run_sweep(spec);
    for (const auto& point : result.points)
      std::printf("lib ppmm n=400 m1=%-3d mean=%8.3f stderr=%7.3f\n",
                  point.point.m1, point.mean_rate, point.stderr_rate);
  }
  {
    cachesim::ExperimentSpec spec = cachesim::preset_fig6();
    spec.values = {2000};
    spec.master_seed = 7;
    const auto result = cachesim::run_sweep(spec);
    for (const auto& point : result.points)
      std::printf("lib ksmlp m=400 m1=%-3d mean=%8.3f stderr=%7.3f\n",
                  point.point.m1, point.mean_rate, point.stderr_rate);
  }
  return 0;
}
