#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cachesim/popularity.hpp"
#include "cachesim/system_model.hpp"

namespace cachesim {

/// Lower bound on the expected optimal transmission rate under the
/// constraint that no stored bit serves more than one user:
/// max(0, sum_i v_i - O*), where v_i = 1 - (1 - p_i)^batch and O* is the
/// fractional-knapsack optimum with values v_i, item weights
/// max(batch * p_i, 1) and the given slot capacity.
double rate_lower_bound(const PopularityModel& model, int batch_size,
                        double capacity);

/// Convenience overload reading batch size and capacity from the config.
double rate_lower_bound(const PopularityModel& model,
                        const SystemConfig& config);

/// Which asymptotic bound a scaling exponent belongs to.
enum class BoundKind {
  OptimalLower,     ///< floor for every uncoded policy
  AchievableUpper,  ///< ceiling achieved by the knapsack + least-popular policy
  SubsetLower,      ///< floor when almost all caches hold a small memory share
};

struct RegimeExponent {
  BoundKind kind;
  std::string regime;  ///< human-readable memory condition
  double exponent;     ///< rate scales as m^exponent
  bool is_upper;       ///< direction of the bound
};

/// Closed-form scaling exponent for the given bound at (beta, mu, gamma),
/// where M = m^mu and n = m^gamma. Returns nullopt outside the bound's
/// cases (in particular for beta <= 1). Exponents are metadata for log-log
/// overlays; the constants behind them are not computed.
std::optional<RegimeExponent> scaling_exponent(BoundKind kind, double beta,
                                               double mu, double gamma);

/// Memory sufficient for the proportional-placement policy's rate to vanish
/// on a homogeneous system with comparable popularity: ceil(3 * n * ln m).
/// Requires n, m >= 2.
std::int64_t vanishing_rate_memory(int n, int m);

/// Regime check for the comparable-popularity (beta < 1) heterogeneous
/// floor, which has no closed-form exponent: when a constant fraction of
/// the caches hold at most n / m^(1/(1-beta)) units each, the expected
/// optimal rate grows without bound in m. The asymptotic statement hides a
/// constant in front of the threshold; this check uses the bare value, so
/// at desk scale it only fires for catalogs much larger than the cluster.
struct PoorMajorityCheck {
  bool applies = false;             ///< beta in [0,1)
  double capacity_threshold = 0.0;  ///< n / m^(1/(1-beta))
  double poor_fraction = 0.0;       ///< caches at or below the threshold
  bool met = false;                 ///< poor_fraction >= required_fraction
};
PoorMajorityCheck poor_majority_regime(const SystemConfig& config,
                                       const StorageProfile& profile,
                                       double required_fraction = 0.5);

}  // namespace cachesim
