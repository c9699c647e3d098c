#include "cachesim/ksmlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cachesim/errors.hpp"
#include "cachesim/rng.hpp"

namespace cachesim {

WeightTiers ks_weight_tiers(const PopularityModel& model,
                            const SystemConfig& config, double delta) {
  if (!(model.beta > 1.0))
    throw RegimeError("ks weights are defined for beta > 1 only");
  if (!(delta > 0.0)) throw ConfigError("ks weights: delta must be > 0");

  const double beta = model.beta;
  const double batch = config.batch_size();
  const double log_m = std::log(static_cast<double>(config.m));

  double n1 = std::floor(std::pow(batch * model.p1(), 1.0 / beta) /
                         std::pow(log_m, 2.0 / beta));
  double n2 = std::floor(std::pow(static_cast<double>(config.m),
                                  (1.0 + delta) / beta));

  WeightTiers tiers;
  tiers.n2 = static_cast<int>(std::clamp<double>(n2, 1.0, model.n));
  tiers.n1 = static_cast<int>(std::clamp<double>(n1, 1.0, tiers.n2));
  return tiers;
}

std::vector<std::int64_t> ks_weights(const PopularityModel& model,
                                     const SystemConfig& config, double delta) {
  const WeightTiers tiers = ks_weight_tiers(model, config, delta);
  const double batch = config.batch_size();
  const double log_m = std::log(static_cast<double>(config.m));

  const auto mid_weight = static_cast<std::int64_t>(
      std::ceil(4.0 * model.p1() * log_m * log_m));
  const auto tail_weight =
      static_cast<std::int64_t>(std::ceil(1.0 / delta + 1.0));

  std::vector<std::int64_t> weights(model.n);
  weights[0] = config.m;
  for (int i = 2; i <= model.n; ++i) {
    if (i <= tiers.n1) {
      weights[i - 1] = static_cast<std::int64_t>(
          std::ceil((1.0 + model.p1() / 2.0) * batch * model.probability(i)));
    } else if (i <= tiers.n2) {
      weights[i - 1] = mid_weight;
    } else {
      weights[i - 1] = tail_weight;
    }
    weights[i - 1] = std::max<std::int64_t>(weights[i - 1], 1);
  }
  return weights;
}

KnapsackSolution solve_fractional_knapsack(const KnapsackInstance& instance) {
  const auto count = instance.values.size();
  if (instance.weights.size() != count)
    throw ConfigError("knapsack: values and weights must align");
  if (instance.capacity < 0.0)
    throw ConfigError("knapsack: capacity must be >= 0");
  for (double w : instance.weights)
    if (!(w > 0.0)) throw ConfigError("knapsack: weights must be positive");

  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  // Stable sort keeps density ties in ascending index order.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.values[a] / instance.weights[a] >
           instance.values[b] / instance.weights[b];
  });

  KnapsackSolution solution;
  solution.x.assign(count, 0.0);
  double used = 0.0;
  for (int idx : order) {
    const double w = instance.weights[idx];
    if (used + w <= instance.capacity + 1e-9) {
      solution.x[idx] = 1.0;
      solution.selected.push_back(idx);
      solution.objective += instance.values[idx];
      used += w;
    } else {
      const double fraction = (instance.capacity - used) / w;
      if (fraction > 0.0) {
        solution.x[idx] = fraction;
        solution.objective += fraction * instance.values[idx];
      }
      break;  // budget exhausted at the break item
    }
  }
  std::sort(solution.selected.begin(), solution.selected.end());
  return solution;
}

double brute_force_knapsack_optimum(const KnapsackInstance& instance) {
  const int count = static_cast<int>(instance.values.size());
  if (count > 20) throw ConfigError("knapsack oracle limited to 20 items");
  double best = 0.0;
  for (int mask = 0; mask < (1 << count); ++mask) {
    double weight = 0.0, value = 0.0;
    for (int i = 0; i < count; ++i)
      if (mask & (1 << i)) {
        weight += instance.weights[i];
        value += instance.values[i];
      }
    if (weight > instance.capacity + 1e-9) continue;
    best = std::max(best, value);
    const double slack = instance.capacity - weight;
    for (int j = 0; j < count; ++j) {
      if (mask & (1 << j)) continue;
      const double fraction = std::min(1.0, slack / instance.weights[j]);
      best = std::max(best, value + fraction * instance.values[j]);
    }
  }
  return best;
}

std::vector<double> request_probability_values(const PopularityModel& model,
                                               int batch_size) {
  std::vector<double> values(model.n);
  for (int i = 0; i < model.n; ++i)
    values[i] = -std::expm1(batch_size * std::log1p(-model.pmf[i]));
  return values;
}

KsPlacement ks_place(const KnapsackSolution& solution,
                     const std::vector<std::int64_t>& weights,
                     const StorageProfile& profile) {
  const int m = profile.cache_count();
  KsPlacement result{PlacementMap(profile, static_cast<int>(weights.size())), 0};

  int cursor = 0;  // round-robin position over caches
  for (int idx : solution.selected) {
    const int file = idx + 1;
    for (std::int64_t copy = 0; copy < weights[idx]; ++copy) {
      bool placed = false;
      for (int step = 0; step < m; ++step) {
        const int cache = (cursor + step) % m + 1;
        if (result.placement.free_slots(cache) == 0) continue;
        if (result.placement.holds(cache, file)) continue;
        result.placement.add(file, cache);
        cursor = cache % m;  // next copy starts after this cache
        placed = true;
        break;
      }
      if (!placed) ++result.dropped_copies;
    }
  }
  return result;
}

DeliveryReport mlp_deliver(const RequestBatch& batch,
                           const PlacementMap& placement,
                           const PopularityModel& model, std::uint64_t seed) {
  // Popularity order is the file-id order, so the model only pins the
  // catalog the placement must cover.
  if (placement.file_count() != model.n)
    throw ConfigError("mlp: placement and popularity model disagree on n");
  Xoshiro256ss rng(seed);

  // Group request positions by file, ascending.
  std::vector<std::pair<int, int>> by_file;  // (file, request index)
  by_file.reserve(batch.size());
  for (int r = 0; r < batch.size(); ++r) by_file.emplace_back(batch.requests[r], r);
  std::sort(by_file.begin(), by_file.end());

  std::vector<int> request_to_cache(batch.size(), 0);
  std::vector<char> idle(placement.cache_count(), 1);

  // Least popular first: walk the groups from the back.
  auto group_end = by_file.end();
  while (group_end != by_file.begin()) {
    auto group_begin = group_end;
    const int file = std::prev(group_end)->first;
    while (group_begin != by_file.begin() && std::prev(group_begin)->first == file)
      --group_begin;
    const auto requests = static_cast<int>(group_end - group_begin);

    std::vector<int> idle_replicas;
    for (int cache : placement.replicas(file))
      if (idle[cache - 1]) idle_replicas.push_back(cache);

    if (requests <= static_cast<int>(idle_replicas.size())) {
      // Uniform without replacement: partial Fisher-Yates on the idle list.
      for (int j = 0; j < requests; ++j) {
        const auto pick = j + static_cast<int>(rng.next_below(idle_replicas.size() - j));
        std::swap(idle_replicas[j], idle_replicas[pick]);
        const int cache = idle_replicas[j];
        request_to_cache[(group_begin + j)->second] = cache;
        idle[cache - 1] = 0;
      }
    }
    // else: more requests than idle replicas; every request for this file
    // stays unmatched.
    group_end = group_begin;
  }
  return make_delivery_report(batch.requests, std::move(request_to_cache));
}

KsPlacement build_ksmlp_placement(const PopularityModel& model,
                                  const SystemConfig& config,
                                  const StorageProfile& profile, double delta) {
  const std::vector<std::int64_t> weights = ks_weights(model, config, delta);
  KnapsackInstance instance;
  instance.values = request_probability_values(model, config.batch_size());
  instance.weights.assign(weights.begin(), weights.end());
  instance.capacity = static_cast<double>(config.total_memory);
  const KnapsackSolution solution = solve_fractional_knapsack(instance);
  return ks_place(solution, weights, profile);
}

DeliveryReport ksmlp_run(const SystemConfig& config,
                         const StorageProfile& profile,
                         const PopularityModel& model,
                         const RequestBatch& batch, double delta,
                         std::uint64_t seed) {
  const KsPlacement placed = build_ksmlp_placement(model, config, profile, delta);
  return mlp_deliver(batch, placed.placement, model, seed);
}

}  // namespace cachesim
