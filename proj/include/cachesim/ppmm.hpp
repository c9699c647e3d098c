#pragma once

#include <cstdint>
#include <vector>

#include "cachesim/matching.hpp"
#include "cachesim/popularity.hpp"
#include "cachesim/system_model.hpp"

namespace cachesim {

/// Replica counts d_1..d_n for the proportional-placement policy.
struct ReplicationPlan {
  std::vector<int> copies;

  std::int64_t total() const;
};

/// Proportional replication: d_i = clamp(round(M * p_i), 0, m), then the sum
/// is repaired to min(M, n*m) by incrementing the smallest-index files with
/// spare headroom (deficit) or decrementing the largest-index files with
/// copies (surplus). Keeps proportionality to within one copy.
ReplicationPlan ppmm_replication(const PopularityModel& model,
                                 const SystemConfig& config);

struct PpmmPlacement {
  PlacementMap placement;
  std::int64_t dropped_copies = 0;  ///< copies that fit on no cache
};

/// Assigns copies file-by-file in ascending file id; each copy lands on a
/// uniformly random free slot, i.e. a cache drawn with probability
/// proportional to its remaining capacity among caches not already holding
/// the file. Deterministic in (plan, profile, seed). A copy with no
/// eligible cache left (possible at the very end of a full-occupancy plan,
/// or when d_i exceeds the caches able to take the file) is dropped and
/// counted.
PpmmPlacement ppmm_place(const ReplicationPlan& plan,
                         const StorageProfile& profile, std::uint64_t seed);

/// Delivery: maximum-cardinality matching between requests and the caches
/// holding their files; everything unmatched is served centrally.
DeliveryReport ppmm_deliver(const RequestBatch& batch,
                            const PlacementMap& placement);

}  // namespace cachesim
