#include "cachesim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <thread>

#include "cachesim/errors.hpp"
#include "cachesim/ksmlp.hpp"
#include "cachesim/ppmm.hpp"
#include "cachesim/rng.hpp"

namespace cachesim {

std::string to_string(PolicyKind policy) {
  return policy == PolicyKind::Ppmm ? "ppmm" : "ksmlp";
}

PolicyKind policy_from_string(const std::string& name) {
  if (name == "ppmm") return PolicyKind::Ppmm;
  if (name == "ksmlp") return PolicyKind::Ksmlp;
  throw ConfigError("unknown policy: " + name);
}

std::uint64_t trial_sub_seed(std::uint64_t trial_seed, std::uint64_t stream) {
  return hash64(trial_seed ^ hash64(stream));
}

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

SweepPointConfig resolve_point(const ExperimentSpec& spec, int curve,
                               int value) {
  SweepPointConfig point;
  point.curve = curve;
  point.axis_value = value;

  int m = 0, n = 0, m1 = 0, k = 0;
  const int divisor = spec.m1_divisors[curve];
  switch (spec.axis) {
    case SweepAxis::FileCount: {
      n = value;
      if (spec.files_per_cache < 1 || n % spec.files_per_cache != 0)
        throw ConfigError("sweep: n value must be a multiple of files_per_cache");
      m = n / spec.files_per_cache;
      m1 = ceil_div(m, divisor);
      const std::int64_t target =
          static_cast<std::int64_t>(spec.memory_per_file) * n;
      k = static_cast<int>((target - (m - m1)) / m1);
      break;
    }
    case SweepAxis::RichCacheSize:
      m = spec.base_m;
      n = spec.base_n;
      m1 = ceil_div(m, divisor);
      k = value;
      break;
    case SweepAxis::RichCacheCount: {
      m = spec.base_m;
      n = spec.base_n;
      m1 = value;
      if (spec.base_k > 0) {
        k = spec.base_k;
      } else {
        const std::int64_t target =
            static_cast<std::int64_t>(spec.memory_per_file) * n;
        k = static_cast<int>((target - (m - m1)) / m1);
      }
      break;
    }
  }
  if (k < 1) throw ConfigError("sweep: resolved rich cache size k < 1");

  point.m1 = m1;
  point.k = k;
  const std::int64_t memory =
      static_cast<std::int64_t>(m1) * k + (m - m1);
  point.config = make_system_config(m, n, memory, spec.rho, spec.beta);
  point.profile = make_rich_poor_profile(m, m1, k);
  return point;
}

}  // namespace

std::vector<SweepPointConfig> enumerate_points(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw ConfigError("sweep: trial count must be >= 1");
  if (spec.values.empty()) throw ConfigError("sweep: no sweep values given");
  if (spec.m1_divisors.empty()) throw ConfigError("sweep: no curves given");
  for (int v : spec.values)
    if (v < 1) throw ConfigError("sweep: sweep values must be positive");

  std::vector<SweepPointConfig> points;
  points.reserve(spec.m1_divisors.size() * spec.values.size());
  for (std::size_t curve = 0; curve < spec.m1_divisors.size(); ++curve)
    for (int value : spec.values)
      points.push_back(resolve_point(spec, static_cast<int>(curve), value));
  return points;
}

PlacementMap build_policy_placement(const PopularityModel& model,
                                    const SystemConfig& config,
                                    const StorageProfile& profile,
                                    PolicyKind policy, double delta,
                                    std::uint64_t seed) {
  if (policy == PolicyKind::Ppmm)
    return std::move(
        ppmm_place(ppmm_replication(model, config), profile, seed).placement);
  return std::move(build_ksmlp_placement(model, config, profile, delta).placement);
}

DeliveryReport run_trial_on(const SystemConfig& config,
                            const PopularityModel& model,
                            const StorageProfile& profile,
                            const PlacementMap* fixed_placement,
                            PolicyKind policy, double delta,
                            std::uint64_t trial_seed) {
  const RequestBatch batch =
      sample_batch(model, config.batch_size(), trial_sub_seed(trial_seed, 1));
  if (policy == PolicyKind::Ppmm) {
    // Placement is part of the experiment: re-randomized every trial so the
    // reported spread covers placement variance.
    const PpmmPlacement placed = ppmm_place(ppmm_replication(model, config),
                                            profile, trial_sub_seed(trial_seed, 3));
    return ppmm_deliver(batch, placed.placement);
  }
  if (fixed_placement != nullptr)
    return mlp_deliver(batch, *fixed_placement, model,
                       trial_sub_seed(trial_seed, 2));
  const KsPlacement placed = build_ksmlp_placement(model, config, profile, delta);
  return mlp_deliver(batch, placed.placement, model,
                     trial_sub_seed(trial_seed, 2));
}

DeliveryReport run_trial(const SystemConfig& config,
                         const StorageProfile& profile, PolicyKind policy,
                         double delta, std::uint64_t trial_seed) {
  const PopularityModel model = build_popularity(config.n, config.beta);
  return run_trial_on(config, model, profile, nullptr, policy, delta,
                      trial_seed);
}

SweepResult run_sweep(const ExperimentSpec& spec, int jobs) {
  SweepResult result;
  result.spec = spec;

  const std::vector<SweepPointConfig> points = enumerate_points(spec);
  const int point_count = static_cast<int>(points.size());
  const int trials = spec.trials;

  // Per-point shared state. The knapsack policy's placement is
  // deterministic, so it is built once per point and shared; the
  // proportional policy re-draws its random placement inside each trial.
  struct PointRuntime {
    PopularityModel model;
    std::unique_ptr<PlacementMap> placement;
  };
  std::vector<PointRuntime> runtimes;
  runtimes.reserve(point_count);
  for (const auto& point : points) {
    PointRuntime runtime;
    runtime.model = build_popularity(point.config.n, spec.beta);
    if (spec.policy == PolicyKind::Ksmlp)
      runtime.placement = std::make_unique<PlacementMap>(
          build_policy_placement(runtime.model, point.config, point.profile,
                                 spec.policy, spec.delta, 0));
    runtimes.push_back(std::move(runtime));
  }

  // One slot per (point, trial); workers write disjoint slots, so the
  // gathered result is identical for any thread count.
  std::vector<std::vector<TrialRecord>> records(point_count);
  for (auto& r : records) r.resize(trials);

  const int total_tasks = point_count * trials;
  std::atomic<int> next_task{0};
  auto worker = [&]() {
    for (;;) {
      const int task = next_task.fetch_add(1);
      if (task >= total_tasks) return;
      const int p = task / trials;
      const int t = task % trials;
      const std::uint64_t seed = mix_seed(spec.master_seed, p, t);
      const DeliveryReport report = run_trial_on(
          points[p].config, runtimes[p].model, points[p].profile,
          runtimes[p].placement.get(), spec.policy, spec.delta, seed);
      records[p][t] = TrialRecord{seed, report.matched,
                                  static_cast<int>(report.unserved.size()),
                                  report.rate};
    }
  };

  int thread_count = jobs > 0 ? jobs
                              : static_cast<int>(std::thread::hardware_concurrency());
  thread_count = std::max(1, std::min(thread_count, total_tasks));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  result.points.reserve(point_count);
  for (int p = 0; p < point_count; ++p) {
    PointResult point_result;
    point_result.point = points[p];
    point_result.trials = std::move(records[p]);

    double sum_rate = 0.0, sum_matched = 0.0, sum_unserved = 0.0;
    for (const auto& trial : point_result.trials) {
      sum_rate += trial.rate;
      sum_matched += trial.matched;
      sum_unserved += trial.unserved;
    }
    point_result.mean_rate = sum_rate / trials;
    point_result.mean_matched = sum_matched / trials;
    point_result.mean_unserved = sum_unserved / trials;
    if (trials > 1) {
      double ss = 0.0;
      for (const auto& trial : point_result.trials) {
        const double d = trial.rate - point_result.mean_rate;
        ss += d * d;
      }
      point_result.stderr_rate = std::sqrt(ss / (trials - 1)) / std::sqrt(trials);
    }
    result.points.push_back(std::move(point_result));
  }
  return result;
}

ExperimentSpec preset_fig4() {
  ExperimentSpec spec;
  spec.name = "fig4";
  spec.policy = PolicyKind::Ppmm;
  spec.beta = 0.3;
  spec.rho = 0.97;
  spec.trials = 100;
  spec.axis = SweepAxis::FileCount;
  spec.values = {50, 100, 200, 400};
  spec.m1_divisors = {1, 2, 10, 20};
  spec.files_per_cache = 1;
  spec.memory_per_file = 3;
  return spec;
}

ExperimentSpec preset_fig5() {
  ExperimentSpec spec;
  spec.name = "fig5";
  spec.policy = PolicyKind::Ppmm;
  spec.beta = 0.3;
  spec.rho = 0.97;
  spec.trials = 100;
  spec.axis = SweepAxis::RichCacheSize;
  spec.values = {1, 2, 3, 4, 6, 8, 12, 16, 20, 24, 28, 32};
  spec.m1_divisors = {1, 2, 4, 8};
  spec.base_m = 400;
  spec.base_n = 400;
  return spec;
}

ExperimentSpec preset_fig6() {
  ExperimentSpec spec;
  spec.name = "fig6";
  spec.policy = PolicyKind::Ksmlp;
  spec.beta = 1.2;
  spec.rho = 0.97;
  spec.delta = 0.5;
  spec.trials = 100;
  spec.axis = SweepAxis::FileCount;
  spec.values = {250, 500, 1000, 2000};
  spec.m1_divisors = {1, 10, 20, 40};
  spec.files_per_cache = 5;
  spec.memory_per_file = 3;
  return spec;
}

ExperimentSpec make_preset(const std::string& name) {
  if (name == "fig4") return preset_fig4();
  if (name == "fig5") return preset_fig5();
  if (name == "fig6") return preset_fig6();
  throw ConfigError("unknown preset: " + name);
}

namespace {

std::string axis_to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::FileCount: return "n";
    case SweepAxis::RichCacheSize: return "k";
    case SweepAxis::RichCacheCount: return "m1";
  }
  return "n";
}

SweepAxis axis_from_string(const std::string& name) {
  if (name == "n") return SweepAxis::FileCount;
  if (name == "k") return SweepAxis::RichCacheSize;
  if (name == "m1") return SweepAxis::RichCacheCount;
  throw ConfigError("unknown sweep axis: " + name);
}

}  // namespace

void to_json(nlohmann::json& j, const ExperimentSpec& spec) {
  j = nlohmann::json{{"name", spec.name},
                     {"policy", to_string(spec.policy)},
                     {"beta", spec.beta},
                     {"rho", spec.rho},
                     {"delta", spec.delta},
                     {"trials", spec.trials},
                     {"seed", spec.master_seed},
                     {"sweep_axis", axis_to_string(spec.axis)},
                     {"sweep_values", spec.values},
                     {"m1_divisors", spec.m1_divisors},
                     {"files_per_cache", spec.files_per_cache},
                     {"memory_per_file", spec.memory_per_file},
                     {"base_m", spec.base_m},
                     {"base_n", spec.base_n},
                     {"base_k", spec.base_k}};
}

void from_json(const nlohmann::json& j, ExperimentSpec& spec) {
  spec = ExperimentSpec{};
  spec.name = j.value("name", std::string("custom"));
  spec.policy = policy_from_string(j.at("policy").get<std::string>());
  spec.beta = j.at("beta").get<double>();
  spec.rho = j.at("rho").get<double>();
  spec.delta = j.value("delta", 0.5);
  spec.trials = j.value("trials", 100);
  spec.master_seed = j.value("seed", std::uint64_t{1});
  spec.axis = axis_from_string(j.at("sweep_axis").get<std::string>());
  spec.values = j.at("sweep_values").get<std::vector<int>>();
  spec.m1_divisors = j.value("m1_divisors", std::vector<int>{1});
  spec.files_per_cache = j.value("files_per_cache", 1);
  spec.memory_per_file = j.value("memory_per_file", 3);
  spec.base_m = j.value("base_m", 400);
  spec.base_n = j.value("base_n", 400);
  spec.base_k = j.value("base_k", 0);
}

}  // namespace cachesim
