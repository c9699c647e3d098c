#include "cachesim/verify.hpp"

#include <cmath>

#include "cachesim/ksmlp.hpp"
#include "cachesim/matching.hpp"
#include "cachesim/popularity.hpp"
#include "cachesim/rng.hpp"

namespace cachesim {

namespace {

BipartiteGraph random_graph(Xoshiro256ss& rng, int max_side) {
  BipartiteGraph graph;
  graph.left_count = static_cast<int>(rng.next_below(max_side + 1));
  graph.right_count = static_cast<int>(rng.next_below(max_side + 1));
  graph.adjacency.resize(graph.left_count);
  for (auto& edges : graph.adjacency)
    for (int w = 0; w < graph.right_count; ++w)
      if (rng.next_double() < 0.4) edges.push_back(w);
  return graph;
}

VerifySuiteResult verify_matching(Xoshiro256ss& rng, int instances) {
  VerifySuiteResult suite{"matching-oracle", 0, 0};
  for (int i = 0; i < instances; ++i) {
    const BipartiteGraph graph = random_graph(rng, 8);
    const std::vector<int> match = max_matching(graph);
    bool ok = matching_cardinality(match) == brute_force_max_matching(graph);
    // The matching must also be a matching: edges only, injective.
    std::vector<char> used(graph.right_count, 0);
    for (int v = 0; v < graph.left_count && ok; ++v) {
      const int w = match[v];
      if (w < 0) continue;
      if (used[w]) ok = false;
      used[w] = 1;
      bool edge = false;
      for (int u : graph.adjacency[v]) edge |= (u == w);
      if (!edge) ok = false;
    }
    ok ? ++suite.passed : ++suite.failed;
  }
  return suite;
}

KnapsackInstance random_knapsack(Xoshiro256ss& rng, int max_items) {
  KnapsackInstance instance;
  const auto count = 1 + rng.next_below(max_items);
  double total_weight = 0.0;
  for (std::uint64_t i = 0; i < count; ++i) {
    instance.values.push_back(rng.next_double() * 10.0);
    instance.weights.push_back(0.1 + rng.next_double() * 5.0);
    total_weight += instance.weights.back();
  }
  instance.capacity = rng.next_double() * total_weight;
  return instance;
}

VerifySuiteResult verify_knapsack(Xoshiro256ss& rng, int instances) {
  VerifySuiteResult suite{"knapsack-oracle", 0, 0};
  for (int i = 0; i < instances; ++i) {
    const KnapsackInstance instance = random_knapsack(rng, 12);
    const KnapsackSolution solution = solve_fractional_knapsack(instance);
    const double oracle = brute_force_knapsack_optimum(instance);
    bool ok = std::abs(solution.objective - oracle) <= 1e-9;

    double used = 0.0;
    int fractional = 0;
    for (std::size_t j = 0; j < solution.x.size(); ++j) {
      used += solution.x[j] * instance.weights[j];
      if (solution.x[j] > 0.0 && solution.x[j] < 1.0) ++fractional;
    }
    if (used > instance.capacity + 1e-9) ok = false;
    if (fractional > 1) ok = false;
    ok ? ++suite.passed : ++suite.failed;
  }
  return suite;
}

VerifySuiteResult verify_pmf() {
  VerifySuiteResult suite{"pmf-normalization", 0, 0};
  const int counts[] = {1, 2, 10, 100, 1000, 100000};
  const double betas[] = {0.0, 0.3, 0.6, 1.0, 1.2, 2.0};
  for (int n : counts) {
    for (double beta : betas) {
      const PopularityModel model = build_popularity(n, beta);
      double sum = 0.0, compensation = 0.0;
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        const double y = model.pmf[i] - compensation;
        const double t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
        if (i > 0 && model.pmf[i] > model.pmf[i - 1]) ok = false;
        const double expected = model.p1() * std::pow(i + 1.0, -beta);
        if (std::abs(model.pmf[i] - expected) > 1e-9 * expected) ok = false;
      }
      if (std::abs(sum - 1.0) > 1e-12) ok = false;
      ok ? ++suite.passed : ++suite.failed;
    }
  }
  return suite;
}

}  // namespace

std::vector<VerifySuiteResult> run_verification(std::uint64_t seed) {
  Xoshiro256ss rng(seed);
  std::vector<VerifySuiteResult> suites;
  suites.push_back(verify_matching(rng, 500));
  suites.push_back(verify_knapsack(rng, 500));
  suites.push_back(verify_pmf());
  return suites;
}

}  // namespace cachesim
