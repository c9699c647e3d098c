#include <doctest.h>

#include <cmath>

#include "cachesim/bounds.hpp"
#include "cachesim/errors.hpp"
#include "cachesim/ksmlp.hpp"

using namespace cachesim;

namespace {

PopularityModel model_from_pmf(std::vector<double> pmf) {
  PopularityModel model;
  model.n = static_cast<int>(pmf.size());
  model.beta = 0.0;
  model.pmf = std::move(pmf);
  model.cdf.resize(model.n);
  double acc = 0.0;
  for (int i = 0; i < model.n; ++i) {
    acc += model.pmf[i];
    model.cdf[i] = acc;
  }
  model.cdf[model.n - 1] = 1.0;
  return model;
}

}  // namespace

TEST_CASE("lower bound with no cache memory is the full demand mass") {
  const PopularityModel model = build_popularity(10, 1.3);
  const auto values = request_probability_values(model, 8);
  double expected = 0.0;
  for (double v : values) expected += v;
  CHECK(rate_lower_bound(model, 8, 0.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("lower bound vanishes once memory covers every item") {
  const PopularityModel model = build_popularity(6, 1.5);
  const int batch = 5;
  double heavy = 0.0;
  for (int i = 0; i < 6; ++i) heavy += std::max(batch * model.pmf[i], 1.0);
  CHECK(rate_lower_bound(model, batch, heavy) == doctest::Approx(0.0));
  CHECK(rate_lower_bound(model, batch, heavy * 2) == doctest::Approx(0.0));
}

TEST_CASE("two-file worked example") {
  // pmf (2/3, 1/3), batch 2, capacity 1:
  //   v = (8/9, 5/9), weights = (4/3, 1), greedy covers 2/3,
  //   bound = 13/9 - 6/9 = 7/9.
  const PopularityModel model = model_from_pmf({2.0 / 3.0, 1.0 / 3.0});
  CHECK(rate_lower_bound(model, 2, 1.0) ==
        doctest::Approx(7.0 / 9.0).epsilon(1e-12));

  // Same numbers via the Zipf constructor (beta = 1 gives pmf 2/3, 1/3)
  // and a config with batch size 2.
  const PopularityModel zipf = build_popularity(2, 1.0);
  const SystemConfig config = make_system_config(3, 2, 3, 0.7, 1.0);
  REQUIRE(config.batch_size() == 2);
  CHECK(rate_lower_bound(zipf, 2, 1.0) ==
        doctest::Approx(7.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("lower bound never increases with memory") {
  const PopularityModel model = build_popularity(50, 1.2);
  double previous = rate_lower_bound(model, 30, 0.0);
  for (double capacity = 1.0; capacity <= 120.0; capacity += 1.0) {
    const double bound = rate_lower_bound(model, 30, capacity);
    REQUIRE(bound <= previous + 1e-12);
    REQUIRE(bound >= 0.0);
    previous = bound;
  }
}

TEST_CASE("scaling exponent table") {
  // M below catalog size: 1 - mu (beta - 1)
  auto exp = scaling_exponent(BoundKind::OptimalLower, 1.2, 1.0, 2.0);
  REQUIRE(exp.has_value());
  CHECK(exp->exponent == doctest::Approx(0.8));
  CHECK_FALSE(exp->is_upper);

  // M equal to catalog size: (2 - mu beta) / beta
  exp = scaling_exponent(BoundKind::OptimalLower, 1.2, 1.0, 1.0);
  REQUIRE(exp.has_value());
  CHECK(exp->exponent == doctest::Approx((2.0 - 1.2) / 1.2));

  // Ample memory: the achievable ceiling drops to a constant.
  exp = scaling_exponent(BoundKind::AchievableUpper, 1.2, 1.5, 1.0);
  REQUIRE(exp.has_value());
  CHECK(exp->exponent == doctest::Approx(0.0));
  CHECK(exp->is_upper);

  // Large catalog branch (gamma > 1/(beta-1)).
  exp = scaling_exponent(BoundKind::AchievableUpper, 2.0, 0.5, 3.0);
  REQUIRE(exp.has_value());
  CHECK(exp->exponent == doctest::Approx(0.5));
  exp = scaling_exponent(BoundKind::AchievableUpper, 2.0, 1.5, 3.0);
  REQUIRE(exp.has_value());
  CHECK(exp->exponent == doctest::Approx(0.0));

  // Subset bound exposes the same exponent as a floor.
  exp = scaling_exponent(BoundKind::SubsetLower, 1.5, 1.0, 1.0);
  REQUIRE(exp.has_value());
  CHECK(exp->exponent == doctest::Approx(0.5));
  CHECK_FALSE(exp->is_upper);

  // Comparable popularity has no entries in this table.
  CHECK_FALSE(scaling_exponent(BoundKind::OptimalLower, 0.8, 1.0, 1.0).has_value());
  CHECK_FALSE(scaling_exponent(BoundKind::SubsetLower, 1.0, 1.0, 1.0).has_value());
}

TEST_CASE("memory threshold for a vanishing rate") {
  // ceil(3 n ln m), checked against a long-double recomputation.
  const auto threshold = [](int n, int m) {
    const long double exact = 3.0L * n * std::log(static_cast<long double>(m));
    return static_cast<std::int64_t>(std::ceil(static_cast<double>(exact)));
  };
  CHECK(vanishing_rate_memory(200, 200) == threshold(200, 200));
  CHECK(vanishing_rate_memory(200, 200) == 3179);  // 600 ln 200 = 3178.99...
  CHECK(vanishing_rate_memory(100, 100) == 1382);  // 300 ln 100 = 1381.55...
  CHECK(vanishing_rate_memory(400, 400) == threshold(400, 400));
  CHECK_THROWS_AS(vanishing_rate_memory(1, 10), ConfigError);
  CHECK_THROWS_AS(vanishing_rate_memory(10, 1), ConfigError);
}

TEST_CASE("lower bound inputs are validated") {
  const PopularityModel model = build_popularity(4, 1.2);
  CHECK_THROWS_AS(rate_lower_bound(model, -1, 5.0), ConfigError);
  CHECK_THROWS_AS(rate_lower_bound(model, 3, -1.0), ConfigError);
}

TEST_CASE("poor-majority regime check") {
  SUBCASE("does not apply for lopsided popularity") {
    const SystemConfig config = make_system_config(10, 10, 30, 0.9, 1.2);
    const StorageProfile profile = make_rich_poor_profile(10, 2, 11);
    const PoorMajorityCheck check = poor_majority_regime(config, profile);
    CHECK_FALSE(check.applies);
    CHECK_FALSE(check.met);
  }
  SUBCASE("wide catalog with mostly unit caches meets the condition") {
    // threshold = n / m^(1/(1-beta)) = 10000 / 10^2 = 100 at beta = 0.5
    const SystemConfig config = make_system_config(10, 10000, 409, 0.9, 0.5);
    const StorageProfile profile = make_rich_poor_profile(10, 2, 200);
    const PoorMajorityCheck check = poor_majority_regime(config, profile);
    CHECK(check.applies);
    CHECK(check.capacity_threshold == doctest::Approx(100.0));
    CHECK(check.poor_fraction == doctest::Approx(0.8));
    CHECK(check.met);
  }
  SUBCASE("equal catalog and cluster sizes leave the threshold vacuous") {
    const SystemConfig config = make_system_config(400, 400, 1200, 0.97, 0.3);
    const StorageProfile profile = make_rich_poor_profile(400, 20, 41);
    const PoorMajorityCheck check = poor_majority_regime(config, profile);
    CHECK(check.applies);
    CHECK(check.capacity_threshold < 1.0);
    CHECK_FALSE(check.met);
  }
}
