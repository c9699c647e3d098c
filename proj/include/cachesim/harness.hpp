#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cachesim/popularity.hpp"
#include "cachesim/system_model.hpp"

namespace cachesim {

enum class PolicyKind { Ppmm, Ksmlp };

std::string to_string(PolicyKind policy);
PolicyKind policy_from_string(const std::string& name);

/// What the sweep varies. FileCount moves n (and m with it, n =
/// files_per_cache * m); RichCacheSize moves k at fixed (m, n);
/// RichCacheCount moves m1 at fixed (m, n).
enum class SweepAxis { FileCount, RichCacheSize, RichCacheCount };

/// A full experiment description: policy, popularity and load parameters,
/// rich/poor profile generator, trial count, master seed, and the sweep.
/// Each entry of m1_divisors contributes one curve with m1 = ceil(m / d).
struct ExperimentSpec {
  std::string name = "custom";
  PolicyKind policy = PolicyKind::Ppmm;
  double beta = 0.3;
  double rho = 0.97;
  double delta = 0.5;
  int trials = 100;
  std::uint64_t master_seed = 1;

  SweepAxis axis = SweepAxis::FileCount;
  std::vector<int> values;
  std::vector<int> m1_divisors{1};

  int files_per_cache = 1;  ///< n = files_per_cache * m on the FileCount axis
  int memory_per_file = 3;  ///< M target = memory_per_file * n
  int base_m = 400;         ///< fixed m for the k and m1 axes
  int base_n = 400;         ///< fixed n for the k and m1 axes
  int base_k = 0;           ///< fixed k for the m1 axis; 0 = solve from memory

  bool operator==(const ExperimentSpec&) const = default;
};

/// One sweep point: resolved sizes plus the validated config and profile.
/// k is solved from the memory target via M = m1*k + (m - m1), then M is
/// recomputed from the rounded (m1, k) so the recorded value is exact.
struct SweepPointConfig {
  int curve = 0;       ///< index into m1_divisors
  int axis_value = 0;  ///< the swept value at this point
  int m1 = 0;
  int k = 0;
  SystemConfig config;
  StorageProfile profile;
};

std::vector<SweepPointConfig> enumerate_points(const ExperimentSpec& spec);

struct TrialRecord {
  std::uint64_t seed = 0;
  int matched = 0;
  int unserved = 0;
  int rate = 0;
};

struct PointResult {
  SweepPointConfig point;
  std::vector<TrialRecord> trials;
  double mean_rate = 0.0;
  double stderr_rate = 0.0;  ///< sample stddev / sqrt(T); 0 when T == 1
  double mean_matched = 0.0;
  double mean_unserved = 0.0;
};

struct SweepResult {
  ExperimentSpec spec;
  std::vector<PointResult> points;  ///< curve-major order
};

/// Placement phase for either policy. The seed feeds the proportional
/// policy's random slot assignment; the knapsack policy's placement is
/// deterministic and ignores it.
PlacementMap build_policy_placement(const PopularityModel& model,
                                    const SystemConfig& config,
                                    const StorageProfile& profile,
                                    PolicyKind policy, double delta,
                                    std::uint64_t seed);

/// Sub-stream seeds derived from a trial seed. Stream 1 drives the batch
/// draw, stream 2 the delivery-phase randomness, stream 3 the placement
/// randomness of the proportional policy.
std::uint64_t trial_sub_seed(std::uint64_t trial_seed, std::uint64_t stream);

/// One experiment: placement phase plus one delivery, a pure function of
/// (config, profile, policy, delta, trial_seed). Every random choice comes
/// from a sub-stream of trial_seed.
DeliveryReport run_trial(const SystemConfig& config,
                         const StorageProfile& profile, PolicyKind policy,
                         double delta, std::uint64_t trial_seed);

/// Same, with the popularity model and (for the deterministic knapsack
/// placement only) a prebuilt placement shared across trials.
DeliveryReport run_trial_on(const SystemConfig& config,
                            const PopularityModel& model,
                            const StorageProfile& profile,
                            const PlacementMap* fixed_placement,
                            PolicyKind policy, double delta,
                            std::uint64_t trial_seed);

/// Runs the whole sweep. Trial seeds are mix_seed(master, point_index,
/// trial_index), so results are independent of execution order and of
/// `jobs` (<= 0 means all available cores).
SweepResult run_sweep(const ExperimentSpec& spec, int jobs = 0);

/// Desk-scale experiment presets.
ExperimentSpec preset_fig4();
ExperimentSpec preset_fig5();
ExperimentSpec preset_fig6();
ExperimentSpec make_preset(const std::string& name);

void to_json(nlohmann::json& j, const ExperimentSpec& spec);
void from_json(const nlohmann::json& j, ExperimentSpec& spec);

}  // namespace cachesim
