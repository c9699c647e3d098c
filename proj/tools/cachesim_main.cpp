// Command-line front end: single runs, parameter sweeps, bound reports,
// preset experiments and self-verification.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cachesim/bounds.hpp"
#include "cachesim/errors.hpp"
#include "cachesim/harness.hpp"
#include "cachesim/io.hpp"
#include "cachesim/ksmlp.hpp"
#include "cachesim/rng.hpp"
#include "cachesim/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitRegime = 3;
constexpr int kExitIo = 4;

std::optional<std::uint64_t> env_seed() {
  const char* value = std::getenv("CACHESIM_SEED");
  if (value == nullptr || *value == '\0') return std::nullopt;
  char* end = nullptr;
  const std::uint64_t seed = std::strtoull(value, &end, 10);
  if (end == nullptr || *end != '\0')
    throw cachesim::ConfigError("CACHESIM_SEED is not an unsigned integer");
  return seed;
}

json load_json(const fs::path& path) {
  const std::string text = cachesim::read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw cachesim::ConfigError("invalid JSON in " + path.string() + ": " +
                                e.what());
  }
}

// Removes every file this run created if it aborts part-way.
class OutputTracker {
 public:
  void record(const fs::path& path) { written_.push_back(path); }
  void discard_all() {
    std::error_code ec;
    for (const auto& path : written_) fs::remove(path, ec);
  }

 private:
  std::vector<fs::path> written_;
};

struct PointSetup {
  cachesim::SystemConfig config;
  cachesim::StorageProfile profile;
  int m1 = 0;
  int k = 0;
};

// Single-point configs accept the storage profile three ways: explicit
// capacities, a rich/poor pair (m1, k), or a homogeneous M divisible by m.
PointSetup load_point_setup(const json& j) {
  PointSetup setup;
  const int m = j.at("m").get<int>();
  const int n = j.at("n").get<int>();
  const double rho = j.at("rho").get<double>();
  const double beta = j.at("beta").get<double>();

  if (j.contains("capacities")) {
    setup.profile = j.get<cachesim::StorageProfile>();
    if (setup.profile.cache_count() != m)
      throw cachesim::ConfigError("config: capacities length must equal m");
    setup.m1 = m;
    setup.k = setup.profile.capacities.front();
  } else if (j.contains("m1") || j.contains("k")) {
    setup.m1 = j.at("m1").get<int>();
    setup.k = j.at("k").get<int>();
    setup.profile = cachesim::make_rich_poor_profile(m, setup.m1, setup.k);
  } else if (j.contains("M")) {
    const auto memory = j.at("M").get<std::int64_t>();
    if (memory % m != 0)
      throw cachesim::ConfigError(
          "config: homogeneous M must be divisible by m (or give m1/k)");
    setup.m1 = m;
    setup.k = static_cast<int>(memory / m);
    setup.profile = cachesim::make_rich_poor_profile(m, m, setup.k);
  } else {
    throw cachesim::ConfigError(
        "config: provide capacities, (m1, k), or homogeneous M");
  }
  setup.config =
      cachesim::make_system_config(m, n, setup.profile.total(), rho, beta);
  return setup;
}

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int trials = 0;  // 0 = keep config/preset value
  std::string policy;
  double delta = -1.0;  // < 0 = keep config/preset value
  bool plot = false;
  int jobs = 0;
  bool seed_given = false;
};

void apply_overrides(cachesim::ExperimentSpec& spec, const CommonFlags& flags) {
  if (flags.seed_given) {
    spec.master_seed = flags.seed;
  } else if (const auto fallback = env_seed()) {
    spec.master_seed = *fallback;
  }
  if (flags.trials > 0) spec.trials = flags.trials;
  if (!flags.policy.empty())
    spec.policy = cachesim::policy_from_string(flags.policy);
  if (flags.delta >= 0.0) spec.delta = flags.delta;
}

void check_regime(const cachesim::ExperimentSpec& spec) {
  if (spec.policy == cachesim::PolicyKind::Ksmlp && !(spec.beta > 1.0))
    throw cachesim::RegimeError(
        "policy ksmlp requires beta > 1 (weight tiers undefined otherwise)");
}

int run_sweep_command(const cachesim::ExperimentSpec& spec_in,
                      const CommonFlags& flags) {
  cachesim::ExperimentSpec spec = spec_in;
  apply_overrides(spec, flags);
  check_regime(spec);

  const fs::path out_dir(flags.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw cachesim::IoError("cannot create output directory: " + out_dir.string());

  const cachesim::SweepResult result = cachesim::run_sweep(spec, flags.jobs);

  OutputTracker tracker;
  try {
    const fs::path csv_path = out_dir / (spec.name + ".csv");
    tracker.record(csv_path);
    cachesim::write_text_file(csv_path, cachesim::render_trials_csv(result));

    const fs::path summary_path = out_dir / (spec.name + "_summary.csv");
    tracker.record(summary_path);
    cachesim::write_text_file(summary_path, cachesim::render_summary_csv(result));

    const json echo = spec;
    const fs::path config_path = out_dir / (spec.name + "_config.json");
    tracker.record(config_path);
    cachesim::write_text_file(config_path, echo.dump(2) + "\n");

    if (flags.plot) {
      const fs::path svg_path = out_dir / (spec.name + ".svg");
      tracker.record(svg_path);
      cachesim::write_text_file(svg_path, cachesim::render_sweep_svg(result));
    }

    std::cout << echo.dump() << '\n';
  } catch (...) {
    tracker.discard_all();
    throw;
  }
  return kExitOk;
}

int run_simulate(const CommonFlags& flags) {
  const json file = load_json(flags.config_path);
  const PointSetup setup = load_point_setup(file);

  cachesim::PolicyKind policy =
      cachesim::policy_from_string(file.value("policy", std::string("ppmm")));
  if (!flags.policy.empty()) policy = cachesim::policy_from_string(flags.policy);
  double delta = file.value("delta", 0.5);
  if (flags.delta >= 0.0) delta = flags.delta;
  int trials = file.value("trials", 1);
  if (flags.trials > 0) trials = flags.trials;
  std::uint64_t seed = file.value("seed", std::uint64_t{1});
  if (flags.seed_given)
    seed = flags.seed;
  else if (!file.contains("seed"))
    if (const auto fallback = env_seed()) seed = *fallback;

  if (policy == cachesim::PolicyKind::Ksmlp && !(setup.config.beta > 1.0))
    throw cachesim::RegimeError("policy ksmlp requires beta > 1");

  const cachesim::PopularityModel model =
      cachesim::build_popularity(setup.config.n, setup.config.beta);

  json trials_json = json::array();
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = cachesim::mix_seed(seed, 0, t);
    const cachesim::DeliveryReport report = cachesim::run_trial_on(
        setup.config, model, setup.profile, nullptr, policy, delta, trial_seed);
    sum += report.rate;
    sum_sq += static_cast<double>(report.rate) * report.rate;
    trials_json.push_back({{"trial", t},
                           {"seed", trial_seed},
                           {"matched", report.matched},
                           {"unserved", report.unserved.size()},
                           {"rate", report.rate}});
  }
  const double mean = sum / trials;
  double stderr_rate = 0.0;
  if (trials > 1) {
    const double variance = (sum_sq - trials * mean * mean) / (trials - 1);
    stderr_rate = std::sqrt(std::max(0.0, variance) / trials);
  }

  json output;
  output["config"] = setup.config;
  output["config"]["m1"] = setup.m1;
  output["config"]["k"] = setup.k;
  output["policy"] = cachesim::to_string(policy);
  output["delta"] = delta;
  output["trials"] = trials;
  output["seed"] = seed;
  output["mean_rate"] = mean;
  output["stderr_rate"] = stderr_rate;
  output["results"] = trials_json;
  std::cout << output.dump(2) << '\n';
  return kExitOk;
}

int run_bounds(const CommonFlags& flags) {
  const json file = load_json(flags.config_path);
  // The lower bound is meaningful for any M >= 0, including M below the
  // cache count, so this path validates fields leniently.
  const int m = file.at("m").get<int>();
  const int n = file.at("n").get<int>();
  const double rho = file.at("rho").get<double>();
  const double beta = file.at("beta").get<double>();
  std::int64_t memory = 0;
  if (file.contains("M")) {
    memory = file.at("M").get<std::int64_t>();
  } else if (file.contains("capacities") || file.contains("m1")) {
    memory = load_point_setup(file).profile.total();
  } else {
    throw cachesim::ConfigError("bounds: provide M or a storage profile");
  }
  if (m < 1 || n < 1) throw cachesim::ConfigError("bounds: m, n must be >= 1");
  if (!(rho > 0.0 && rho < 1.0))
    throw cachesim::ConfigError("bounds: rho must lie in (0,1)");
  if (memory < 0) throw cachesim::ConfigError("bounds: M must be >= 0");

  const cachesim::PopularityModel model = cachesim::build_popularity(n, beta);
  const int batch = static_cast<int>(std::floor(rho * m + 1e-9));
  const double bound =
      cachesim::rate_lower_bound(model, batch, static_cast<double>(memory));

  json output;
  output["config"] = {{"m", m}, {"n", n}, {"M", memory}, {"rho", rho}, {"beta", beta}};
  output["batch_size"] = batch;
  output["lower_bound"] = bound;
  if (n >= 2 && m >= 2)
    output["vanishing_rate_memory"] = cachesim::vanishing_rate_memory(n, m);

  json exponents = json::array();
  if (memory >= 1 && m >= 2) {
    const double mu = std::log(static_cast<double>(memory)) / std::log(m);
    const double gamma = std::log(static_cast<double>(n)) / std::log(m);
    const auto add = [&](cachesim::BoundKind kind, const char* name) {
      if (const auto exp = cachesim::scaling_exponent(kind, beta, mu, gamma)) {
        exponents.push_back({{"bound", name},
                             {"regime", exp->regime},
                             {"exponent", exp->exponent},
                             {"direction", exp->is_upper ? "upper" : "lower"}});
      }
    };
    add(cachesim::BoundKind::OptimalLower, "optimal_lower");
    add(cachesim::BoundKind::AchievableUpper, "achievable_upper");
    add(cachesim::BoundKind::SubsetLower, "subset_lower");
  }
  output["exponents"] = exponents;

  // With a concrete storage profile the comparable-popularity floor can be
  // regime-checked (it has no exponent, only conditions).
  if (file.contains("capacities") || file.contains("m1")) {
    const PointSetup setup = load_point_setup(file);
    const auto check =
        cachesim::poor_majority_regime(setup.config, setup.profile);
    output["poor_majority_regime"] = {
        {"applies", check.applies},
        {"capacity_threshold", check.capacity_threshold},
        {"poor_fraction", check.poor_fraction},
        {"met", check.met}};
  }
  std::cout << output.dump(2) << '\n';
  return kExitOk;
}

int run_verify(std::uint64_t seed) {
  const auto suites = cachesim::run_verification(seed);
  bool all_ok = true;
  for (const auto& suite : suites) {
    const bool ok = suite.failed == 0;
    all_ok = all_ok && ok;
    std::cout << (ok ? "PASS" : "FAIL") << ' ' << suite.name << ": "
              << suite.passed << " passed, " << suite.failed << " failed\n";
  }
  std::cout << (all_ok ? "verification OK" : "verification FAILED") << '\n';
  return all_ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Storage-heterogeneous cache cluster simulator"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string preset_name;

  const auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", flags.seed, "master PRNG seed")
        ->each([&](const std::string&) { flags.seed_given = true; });
  };
  const auto add_run_flags = [&](CLI::App* cmd) {
    add_seed(cmd);
    cmd->add_option("--trials", flags.trials, "trials per sweep point");
    cmd->add_option("--policy", flags.policy, "ppmm or ksmlp");
    cmd->add_option("--delta", flags.delta, "tail replication parameter");
    cmd->add_option("--jobs", flags.jobs, "worker threads (default: all cores)");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_flag("--plot", flags.plot, "also write an SVG line chart");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run one configuration");
  simulate->add_option("--config", flags.config_path, "JSON config")->required();
  add_seed(simulate);
  simulate->add_option("--trials", flags.trials, "number of trials");
  simulate->add_option("--policy", flags.policy, "ppmm or ksmlp");
  simulate->add_option("--delta", flags.delta, "tail replication parameter");

  CLI::App* sweep = app.add_subcommand("sweep", "run a sweep from a JSON spec");
  sweep->add_option("--config", flags.config_path, "JSON sweep spec")->required();
  add_run_flags(sweep);

  CLI::App* preset =
      app.add_subcommand("preset", "run a built-in experiment preset");
  preset->add_option("name", preset_name, "fig4, fig5 or fig6")->required();
  add_run_flags(preset);

  CLI::App* bounds = app.add_subcommand("bounds", "print bound values as JSON");
  bounds->add_option("--config", flags.config_path, "JSON config")->required();

  CLI::App* verify = app.add_subcommand("verify", "run oracle self-checks");
  add_seed(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadConfig;
  }

  try {
    if (simulate->parsed()) return run_simulate(flags);
    if (sweep->parsed()) {
      const json spec_json = load_json(flags.config_path);
      cachesim::ExperimentSpec spec;
      try {
        spec = spec_json.get<cachesim::ExperimentSpec>();
      } catch (const json::exception& e) {
        throw cachesim::ConfigError(std::string("invalid sweep spec: ") + e.what());
      }
      return run_sweep_command(spec, flags);
    }
    if (preset->parsed())
      return run_sweep_command(cachesim::make_preset(preset_name), flags);
    if (bounds->parsed()) return run_bounds(flags);
    if (verify->parsed())
      return run_verify(flags.seed_given ? flags.seed
                                         : env_seed().value_or(20240501));
  } catch (const cachesim::RegimeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRegime;
  } catch (const cachesim::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const cachesim::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
