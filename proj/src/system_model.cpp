#include "cachesim/system_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cachesim/errors.hpp"

namespace cachesim {

int SystemConfig::batch_size() const {
  return static_cast<int>(std::floor(rho * m + 1e-9));
}

double SystemConfig::gamma() const { return std::log(n) / std::log(m); }

double SystemConfig::mu() const {
  return std::log(static_cast<double>(total_memory)) / std::log(m);
}

SystemConfig make_system_config(int m, int n, std::int64_t total_memory,
                                double rho, double beta) {
  if (m < 1) throw ConfigError("config: cache count m must be >= 1");
  if (n < 1) throw ConfigError("config: file count n must be >= 1");
  if (total_memory < m)
    throw ConfigError("config: M must be >= m (every cache stores >= 1 file)");
  if (!(rho > 0.0 && rho < 1.0))
    throw ConfigError("config: rho must lie in (0, 1)");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw ConfigError("config: beta must be finite and >= 0");
  return SystemConfig{m, n, total_memory, rho, beta};
}

std::int64_t StorageProfile::total() const {
  std::int64_t sum = 0;
  for (int k : capacities) sum += k;
  return sum;
}

StorageProfile make_profile(std::vector<int> capacities) {
  if (capacities.empty()) throw ConfigError("profile: needs at least one cache");
  for (int k : capacities)
    if (k < 1) throw ConfigError("profile: every capacity must be >= 1");
  std::sort(capacities.begin(), capacities.end(), std::greater<int>());
  return StorageProfile{std::move(capacities)};
}

StorageProfile make_rich_poor_profile(int m, int m1, int k) {
  if (m1 < 1 || m1 > m)
    throw ConfigError("profile: rich cache count must satisfy 1 <= m1 <= m");
  if (k < 1) throw ConfigError("profile: rich capacity k must be >= 1");
  std::vector<int> capacities(m, 1);
  std::fill(capacities.begin(), capacities.begin() + m1, k);
  return StorageProfile{std::move(capacities)};
}

PlacementMap::PlacementMap(const StorageProfile& profile, int file_count)
    : by_cache_(profile.cache_count()),
      by_file_(file_count),
      capacity_(profile.capacities),
      free_(profile.capacities) {}

void PlacementMap::add(int file, int cache) {
  auto& files = by_cache_[cache - 1];
  const auto pos = std::lower_bound(files.begin(), files.end(), file);
  if (pos != files.end() && *pos == file)
    throw PlacementError("placement: cache already holds this file");
  if (free_[cache - 1] == 0) throw PlacementError("placement: cache is full");
  files.insert(pos, file);
  auto& caches = by_file_[file - 1];
  caches.insert(std::lower_bound(caches.begin(), caches.end(), cache), cache);
  --free_[cache - 1];
  ++placed_;
}

bool PlacementMap::holds(int cache, int file) const {
  const auto& files = by_cache_[cache - 1];
  return std::binary_search(files.begin(), files.end(), file);
}

int transmission_rate(const std::vector<int>& unserved_files) {
  std::vector<int> distinct(unserved_files);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  return static_cast<int>(distinct.size());
}

DeliveryReport make_delivery_report(const std::vector<int>& requests,
                                    std::vector<int> request_to_cache) {
  DeliveryReport report;
  report.request_to_cache = std::move(request_to_cache);
  for (std::size_t r = 0; r < requests.size(); ++r) {
    if (report.request_to_cache[r] != 0)
      ++report.matched;
    else
      report.unserved.push_back(requests[r]);
  }
  std::sort(report.unserved.begin(), report.unserved.end());
  report.rate = transmission_rate(report.unserved);
  return report;
}

void to_json(nlohmann::json& j, const SystemConfig& config) {
  j = nlohmann::json{{"m", config.m},
                     {"n", config.n},
                     {"M", config.total_memory},
                     {"rho", config.rho},
                     {"beta", config.beta}};
}

void from_json(const nlohmann::json& j, SystemConfig& config) {
  const auto& memory = j.at("M");
  if (!memory.is_number_integer())
    throw ConfigError("config: M must be an integer slot count");
  config = make_system_config(j.at("m").get<int>(), j.at("n").get<int>(),
                              memory.get<std::int64_t>(),
                              j.at("rho").get<double>(),
                              j.at("beta").get<double>());
}

void to_json(nlohmann::json& j, const StorageProfile& profile) {
  j = nlohmann::json{{"capacities", profile.capacities}};
}

void from_json(const nlohmann::json& j, StorageProfile& profile) {
  profile = make_profile(j.at("capacities").get<std::vector<int>>());
}

}  // namespace cachesim
