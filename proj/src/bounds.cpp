#include "cachesim/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "cachesim/errors.hpp"
#include "cachesim/ksmlp.hpp"

namespace cachesim {

double rate_lower_bound(const PopularityModel& model, int batch_size,
                        double capacity) {
  if (batch_size < 0) throw ConfigError("lower bound: batch size must be >= 0");
  if (capacity < 0.0) throw ConfigError("lower bound: capacity must be >= 0");

  KnapsackInstance instance;
  instance.values = request_probability_values(model, batch_size);
  instance.weights.resize(model.n);
  for (int i = 0; i < model.n; ++i)
    instance.weights[i] = std::max(batch_size * model.pmf[i], 1.0);
  instance.capacity = capacity;

  double total_value = 0.0;
  for (double v : instance.values) total_value += v;

  const double covered = solve_fractional_knapsack(instance).objective;
  return std::max(0.0, total_value - covered);
}

double rate_lower_bound(const PopularityModel& model,
                        const SystemConfig& config) {
  return rate_lower_bound(model, config.batch_size(),
                          static_cast<double>(config.total_memory));
}

std::optional<RegimeExponent> scaling_exponent(BoundKind kind, double beta,
                                               double mu, double gamma) {
  if (!(beta > 1.0)) return std::nullopt;
  const bool is_upper = kind == BoundKind::AchievableUpper;

  if (kind == BoundKind::SubsetLower) {
    return RegimeExponent{kind,
                          "almost all caches hold at most a constant fraction "
                          "of the catalog",
                          1.0 - mu * (beta - 1.0), false};
  }

  constexpr double kEps = 1e-9;
  const double replication_threshold = 1.0 / (beta - 1.0);
  if (gamma <= replication_threshold + kEps) {
    if (mu < gamma - kEps)
      return RegimeExponent{kind, "M below catalog size",
                            1.0 - mu * (beta - 1.0), is_upper};
    if (std::abs(mu - gamma) <= kEps)
      return RegimeExponent{kind, "M equals catalog size",
                            (2.0 - mu * beta) / beta, is_upper};
    return RegimeExponent{kind, "M above catalog size", 0.0, is_upper};
  }
  if (mu < replication_threshold - kEps)
    return RegimeExponent{kind, "M below the replication threshold",
                          1.0 - mu * (beta - 1.0), is_upper};
  return RegimeExponent{kind, "M at or above the replication threshold", 0.0,
                        is_upper};
}

std::int64_t vanishing_rate_memory(int n, int m) {
  if (n < 2 || m < 2)
    throw ConfigError("vanishing-rate memory threshold needs n, m >= 2");
  return static_cast<std::int64_t>(
      std::ceil(3.0 * static_cast<double>(n) * std::log(static_cast<double>(m))));
}

PoorMajorityCheck poor_majority_regime(const SystemConfig& config,
                                       const StorageProfile& profile,
                                       double required_fraction) {
  PoorMajorityCheck check;
  if (!(config.beta >= 0.0 && config.beta < 1.0)) return check;
  check.applies = true;
  check.capacity_threshold =
      config.n / std::pow(static_cast<double>(config.m),
                          1.0 / (1.0 - config.beta));
  int poor = 0;
  for (int k : profile.capacities)
    if (k <= check.capacity_threshold) ++poor;
  check.poor_fraction = static_cast<double>(poor) / profile.cache_count();
  check.met = check.poor_fraction >= required_fraction;
  return check;
}

}  // namespace cachesim
