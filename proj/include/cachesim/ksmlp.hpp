#pragma once

#include <cstdint>
#include <vector>

#include "cachesim/popularity.hpp"
#include "cachesim/system_model.hpp"

namespace cachesim {

/// Replication weights for the knapsack storage step. Four tiers by file
/// rank: the most popular file gets one copy per cache; a head tier sized to
/// expected demand; a middle tier with a polylog copy count; a constant-copy
/// tail. Natural logs throughout.
///
/// Throws RegimeError when beta <= 1 (the tier cutoffs are only defined for
/// lopsided popularity) and ConfigError when delta <= 0.
std::vector<std::int64_t> ks_weights(const PopularityModel& model,
                                     const SystemConfig& config, double delta);

/// Tier cutoffs used by ks_weights, exposed for inspection/tests.
struct WeightTiers {
  int n1 = 0;  ///< last rank of the demand-proportional tier
  int n2 = 0;  ///< last rank of the polylog tier
};
WeightTiers ks_weight_tiers(const PopularityModel& model,
                            const SystemConfig& config, double delta);

struct KnapsackInstance {
  std::vector<double> values;
  std::vector<double> weights;  ///< all positive
  double capacity = 0.0;
};

struct KnapsackSolution {
  std::vector<double> x;      ///< x[i] in [0,1], at most one fractional
  std::vector<int> selected;  ///< 0-based indices with x == 1, ascending
  double objective = 0.0;
};

/// Greedy fractional knapsack: items by value/weight density descending
/// (ties toward the lower index), taken fully until the budget breaks, then
/// one fractional item. LP-optimal.
KnapsackSolution solve_fractional_knapsack(const KnapsackInstance& instance);

/// Exact LP optimum by enumerating every (full subset, fractional item)
/// vertex. Test / verify oracle; throws ConfigError above 20 items.
double brute_force_knapsack_optimum(const KnapsackInstance& instance);

/// The knapsack's per-file values: probability that file i is requested at
/// least once in a batch of the given size, 1 - (1 - p_i)^batch.
std::vector<double> request_probability_values(const PopularityModel& model,
                                               int batch_size);

struct KsPlacement {
  PlacementMap placement;
  std::int64_t dropped_copies = 0;  ///< copies that fit on no cache
};

/// Round-robin slot assignment: the copy list (weights[i] copies of every
/// selected file, ascending file id) walks cyclically over caches in
/// descending-capacity order, skipping caches that are full or already hold
/// the file. A copy that fits nowhere is dropped and counted.
KsPlacement ks_place(const KnapsackSolution& solution,
                     const std::vector<std::int64_t>& weights,
                     const StorageProfile& profile);

/// Match-least-popular delivery: files from least to most popular; a file's
/// requests either all match (to idle replicas chosen uniformly at random
/// without replacement) or, when requests outnumber idle replicas, all go to
/// the central server.
DeliveryReport mlp_deliver(const RequestBatch& batch,
                           const PlacementMap& placement,
                           const PopularityModel& model, std::uint64_t seed);

/// Placement phase of the combined policy (weights -> knapsack -> slots).
KsPlacement build_ksmlp_placement(const PopularityModel& model,
                                  const SystemConfig& config,
                                  const StorageProfile& profile, double delta);

/// Full policy: placement phase plus one delivery.
DeliveryReport ksmlp_run(const SystemConfig& config,
                         const StorageProfile& profile,
                         const PopularityModel& model,
                         const RequestBatch& batch, double delta,
                         std::uint64_t seed);

}  // namespace cachesim
