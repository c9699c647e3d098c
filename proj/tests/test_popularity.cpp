#include <doctest.h>

#include <cmath>
#include <set>

#include "cachesim/errors.hpp"
#include "cachesim/popularity.hpp"

using namespace cachesim;

namespace {

double kahan_sum(const std::vector<double>& values) {
  double sum = 0.0, compensation = 0.0;
  for (double v : values) {
    const double y = v - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Chi-square quantile via the Wilson-Hilferty approximation; good to a few
// tenths for the dof used here, which is plenty for a 0.001-level smoke test.
double chi_square_quantile(int dof, double z_upper) {
  const double a = 2.0 / (9.0 * dof);
  const double term = 1.0 - a + z_upper * std::sqrt(a);
  return dof * term * term * term;
}

constexpr double kZ999 = 3.090232306167814;  // standard normal 0.999 quantile

}  // namespace

TEST_CASE("uniform pmf at beta zero") {
  const PopularityModel model = build_popularity(3, 0.0);
  for (double p : model.pmf) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("single file puts all mass on it") {
  const PopularityModel model = build_popularity(1, 2.7);
  CHECK(model.pmf.size() == 1);
  CHECK(model.pmf[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("harmonic normalizer, n = 4, beta = 1") {
  // p_1 = 1 / (1 + 1/2 + 1/3 + 1/4) = 12/25
  const PopularityModel model = build_popularity(4, 1.0);
  CHECK(model.pmf[0] == doctest::Approx(0.48).epsilon(1e-12));
  CHECK(model.pmf[1] == doctest::Approx(0.24).epsilon(1e-12));
  CHECK(model.pmf[2] == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(model.pmf[3] == doctest::Approx(0.12).epsilon(1e-12));
}

TEST_CASE("pmf normalization and shape across the parameter grid") {
  for (int n : {1, 2, 100, 10000, 1000000}) {
    for (double beta : {0.0, 0.3, 0.6, 1.0, 1.2, 2.0}) {
      CAPTURE(n);
      CAPTURE(beta);
      const PopularityModel model = build_popularity(n, beta);
      CHECK(std::abs(kahan_sum(model.pmf) - 1.0) <= 1e-12);
      for (int i = 1; i < n; ++i) {
        REQUIRE(model.pmf[i] <= model.pmf[i - 1]);
      }
      // Spot-check the power law shape at a few ranks.
      for (int i : {1, n / 2, n}) {
        if (i < 1) continue;
        const double expected = model.p1() * std::pow(i, -beta);
        REQUIRE(model.probability(i) ==
                doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("invalid popularity arguments") {
  CHECK_THROWS_AS(build_popularity(0, 1.0), ConfigError);
  CHECK_THROWS_AS(build_popularity(10, -0.5), ConfigError);
  CHECK_THROWS_AS(build_popularity(10, std::nan("")), ConfigError);
}

TEST_CASE("empty batch") {
  const PopularityModel model = build_popularity(5, 0.6);
  const RequestBatch batch = sample_batch(model, 0, 42);
  CHECK(batch.requests.empty());
  for (int file = 1; file <= 5; ++file) CHECK(batch.count_of(file) == 0);
}

TEST_CASE("batch invariants and determinism") {
  const PopularityModel model = build_popularity(50, 1.2);
  const RequestBatch a = sample_batch(model, 388, 7);
  const RequestBatch b = sample_batch(model, 388, 7);
  const RequestBatch c = sample_batch(model, 388, 8);

  CHECK(a.requests == b.requests);
  CHECK(a.requests != c.requests);  // overwhelming-probability smoke check
  CHECK(a.size() == 388);

  int total = 0;
  for (int file = 1; file <= 50; ++file) total += a.count_of(file);
  CHECK(total == 388);
  for (int file : a.requests) {
    REQUIRE(file >= 1);
    REQUIRE(file <= 50);
  }
}

TEST_CASE("uniform sampler frequencies within the binomial 3-sigma band") {
  const PopularityModel model = build_popularity(10, 0.0);
  const int draws = 100000;
  const RequestBatch batch = sample_batch(model, draws, 12345);
  // 3 * sqrt(0.1 * 0.9 / 1e5) = 0.0028460...
  const double band = 3.0 * std::sqrt(0.1 * 0.9 / draws);
  int within = 0;
  for (int file = 1; file <= 10; ++file) {
    const double freq = static_cast<double>(batch.count_of(file)) / draws;
    if (std::abs(freq - 0.1) <= band) ++within;
  }
  CHECK(within >= 9);
}

TEST_CASE("chi-square goodness of fit at the 0.001 level") {
  for (auto [n, beta] : {std::pair{10, 0.6}, std::pair{100, 1.2}}) {
    CAPTURE(n);
    CAPTURE(beta);
    const PopularityModel model = build_popularity(n, beta);
    const int draws = 100000;
    const RequestBatch batch = sample_batch(model, draws, 777);
    double statistic = 0.0;
    for (int file = 1; file <= n; ++file) {
      const double expected = draws * model.probability(file);
      const double diff = batch.count_of(file) - expected;
      statistic += diff * diff / expected;
    }
    CHECK(statistic < chi_square_quantile(n - 1, kZ999));
  }
}

TEST_CASE("negative batch size is rejected") {
  const PopularityModel model = build_popularity(4, 0.3);
  CHECK_THROWS_AS(sample_batch(model, -1, 0), ConfigError);
}
