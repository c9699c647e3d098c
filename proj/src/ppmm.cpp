#include "cachesim/ppmm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cachesim/errors.hpp"
#include "cachesim/rng.hpp"

namespace cachesim {

std::int64_t ReplicationPlan::total() const {
  return std::accumulate(copies.begin(), copies.end(), std::int64_t{0});
}

ReplicationPlan ppmm_replication(const PopularityModel& model,
                                 const SystemConfig& config) {
  const int n = model.n;
  const int m = config.m;
  ReplicationPlan plan;
  plan.copies.resize(n);

  std::int64_t placed = 0;
  for (int i = 0; i < n; ++i) {
    auto d = static_cast<std::int64_t>(
        std::lround(static_cast<double>(config.total_memory) * model.pmf[i]));
    d = std::clamp<std::int64_t>(d, 0, m);
    plan.copies[i] = static_cast<int>(d);
    placed += d;
  }

  // No cache may hold duplicates, so at most n*m copies fit overall.
  const std::int64_t target =
      std::min<std::int64_t>(config.total_memory, static_cast<std::int64_t>(n) * m);

  // Repair passes move one copy per file at a time (smallest index first
  // when adding, largest first when removing) so no single file drifts more
  // than a copy per pass from its proportional share. Draining whole files
  // instead would zero out the tail and visibly distort the rate.
  if (placed < target) {
    std::int64_t deficit = target - placed;
    while (deficit > 0) {
      for (int i = 0; i < n && deficit > 0; ++i) {
        if (plan.copies[i] < m) {
          ++plan.copies[i];
          --deficit;
        }
      }
    }
  } else if (placed > target) {
    std::int64_t surplus = placed - target;
    while (surplus > 0) {
      for (int i = n - 1; i >= 0 && surplus > 0; --i) {
        if (plan.copies[i] > 0) {
          --plan.copies[i];
          --surplus;
        }
      }
    }
  }
  return plan;
}

PpmmPlacement ppmm_place(const ReplicationPlan& plan,
                         const StorageProfile& profile, std::uint64_t seed) {
  const int m = profile.cache_count();
  const int n = static_cast<int>(plan.copies.size());
  PpmmPlacement result{PlacementMap(profile, n), 0};
  PlacementMap& placement = result.placement;
  Xoshiro256ss rng(seed);

  // One entry per free slot; sampling an entry samples a cache with
  // probability proportional to its remaining capacity.
  std::vector<int> free_slots;
  free_slots.reserve(static_cast<std::size_t>(profile.total()));
  for (int cache = 1; cache <= m; ++cache)
    free_slots.insert(free_slots.end(), profile.capacities[cache - 1], cache);

  for (int file = 1; file <= n; ++file) {
    const int wanted = plan.copies[file - 1];
    for (int copy = 0; copy < wanted; ++copy) {
      int chosen = 0;
      // Rejection sampling over slots; duplicates are rare because a file's
      // copy count is small next to the slot pool.
      for (int attempt = 0; attempt < 64 && !free_slots.empty(); ++attempt) {
        const auto idx =
            static_cast<std::size_t>(rng.next_below(free_slots.size()));
        const int cache = free_slots[idx];
        if (!placement.holds(cache, file)) {
          chosen = cache;
          free_slots[idx] = free_slots.back();
          free_slots.pop_back();
          break;
        }
      }
      if (chosen == 0) {
        // Slow path: count eligible slots, then pick uniformly among them.
        std::int64_t eligible = 0;
        for (int cache = 1; cache <= m; ++cache)
          if (placement.free_slots(cache) > 0 && !placement.holds(cache, file))
            eligible += placement.free_slots(cache);
        if (eligible == 0) {
          ++result.dropped_copies;
          continue;
        }
        std::int64_t pick =
            static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(eligible)));
        for (int cache = 1; cache <= m; ++cache) {
          if (placement.free_slots(cache) == 0 || placement.holds(cache, file))
            continue;
          pick -= placement.free_slots(cache);
          if (pick < 0) {
            chosen = cache;
            break;
          }
        }
        // Drop one matching entry from the slot pool.
        for (auto& slot : free_slots)
          if (slot == chosen) {
            slot = free_slots.back();
            free_slots.pop_back();
            break;
          }
      }
      placement.add(file, chosen);
    }
  }
  return result;
}

DeliveryReport ppmm_deliver(const RequestBatch& batch,
                            const PlacementMap& placement) {
  const BipartiteGraph graph = build_request_graph(batch, placement);
  const std::vector<int> match = max_matching(graph);
  std::vector<int> request_to_cache(batch.size(), 0);
  for (int r = 0; r < batch.size(); ++r)
    if (match[r] >= 0) request_to_cache[r] = match[r] + 1;
  return make_delivery_report(batch.requests, std::move(request_to_cache));
}

}  // namespace cachesim
