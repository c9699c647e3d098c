#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cachesim {

/// Cluster-level parameters. gamma and mu are always recomputed from
/// (m, n, M), never trusted from input.
struct SystemConfig {
  int m = 0;                       ///< cache count
  int n = 0;                       ///< file count
  std::int64_t total_memory = 0;   ///< M, cumulative slots across caches
  double rho = 0.0;                ///< load factor in (0,1)
  double beta = 0.0;               ///< Zipf parameter

  /// Batch size per time-slot: floor(rho * m). The product is nudged by
  /// 1e-9 before flooring so a decimal-intent product like 0.97*400 = 388
  /// cannot land one below due to binary rounding.
  int batch_size() const;

  double gamma() const;  ///< ln n / ln m
  double mu() const;     ///< ln M / ln m
};

/// Validates and returns a SystemConfig.
/// Requires m >= 1, n >= 1, M >= m, 0 < rho < 1, beta >= 0 finite.
SystemConfig make_system_config(int m, int n, std::int64_t total_memory,
                                double rho, double beta);

/// Per-cache slot capacities k_1..k_m, non-increasing, each >= 1.
struct StorageProfile {
  std::vector<int> capacities;

  int cache_count() const { return static_cast<int>(capacities.size()); }
  std::int64_t total() const;
};

/// Validates capacities (each >= 1) and sorts them into non-increasing order.
StorageProfile make_profile(std::vector<int> capacities);

/// Two-class profile: m1 "rich" caches with k slots followed by m - m1
/// "poor" caches with 1 slot. Total memory is m1*k + (m - m1).
StorageProfile make_rich_poor_profile(int m, int m1, int k);

/// Which files occupy which cache slots. Keeps both directions
/// (cache -> files and file -> caches) consistent through a single
/// mutation entry point. Cache and file ids are 1-based.
class PlacementMap {
 public:
  PlacementMap(const StorageProfile& profile, int file_count);

  /// Stores one copy of `file` on `cache`. Throws PlacementError when the
  /// cache is full or already holds the file.
  void add(int file, int cache);

  bool holds(int cache, int file) const;
  int free_slots(int cache) const { return free_[cache - 1]; }
  int capacity(int cache) const { return capacity_[cache - 1]; }

  /// Caches holding `file`, ascending cache id.
  const std::vector<int>& replicas(int file) const { return by_file_[file - 1]; }
  /// Files stored on `cache`, ascending file id.
  const std::vector<int>& files_on(int cache) const { return by_cache_[cache - 1]; }

  int cache_count() const { return static_cast<int>(by_cache_.size()); }
  int file_count() const { return static_cast<int>(by_file_.size()); }
  std::int64_t placed_copies() const { return placed_; }

 private:
  std::vector<std::vector<int>> by_cache_;  // cache -> sorted file ids
  std::vector<std::vector<int>> by_file_;   // file -> sorted cache ids
  std::vector<int> capacity_;
  std::vector<int> free_;
  std::int64_t placed_ = 0;
};

/// Outcome of one delivery phase.
struct DeliveryReport {
  /// Per request: 1-based cache id serving it, or 0 if served centrally.
  std::vector<int> request_to_cache;
  int matched = 0;
  /// File ids of the centrally-served requests (multiset, ascending).
  std::vector<int> unserved;
  /// Distinct files in `unserved`: what the central server must transmit.
  int rate = 0;
};

/// Number of distinct file ids in a multiset of unserved requests.
int transmission_rate(const std::vector<int>& unserved_files);

/// Assembles a DeliveryReport from a request list and its (partial)
/// request -> cache assignment (0 = unmatched).
DeliveryReport make_delivery_report(const std::vector<int>& requests,
                                    std::vector<int> request_to_cache);

// JSON forms used by the CLI config loader. Field names are part of the
// file-format contract: m, n, M, rho, beta / capacities.
void to_json(nlohmann::json& j, const SystemConfig& config);
void from_json(const nlohmann::json& j, SystemConfig& config);
void to_json(nlohmann::json& j, const StorageProfile& profile);
void from_json(const nlohmann::json& j, StorageProfile& profile);

}  // namespace cachesim
