#include "cachesim/popularity.hpp"

#include <algorithm>
#include <cmath>

#include "cachesim/errors.hpp"
#include "cachesim/rng.hpp"

namespace cachesim {

namespace {

// Kahan-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace

PopularityModel build_popularity(int n, double beta) {
  if (n < 1) throw ConfigError("popularity: file count must be >= 1");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw ConfigError("popularity: beta must be finite and >= 0");

  PopularityModel model;
  model.n = n;
  model.beta = beta;
  model.pmf.resize(n);

  CompensatedSum normalizer;
  for (int i = 1; i <= n; ++i) {
    model.pmf[i - 1] = std::pow(static_cast<double>(i), -beta);
    normalizer.add(model.pmf[i - 1]);
  }
  const double scale = 1.0 / normalizer.value();
  for (double& p : model.pmf) p *= scale;

  model.cdf.resize(n);
  CompensatedSum running;
  for (int i = 0; i < n; ++i) {
    running.add(model.pmf[i]);
    model.cdf[i] = running.value();
  }
  // The last entry anchors the binary search; force it so a draw of
  // u -> 1 can never fall off the end.
  model.cdf[n - 1] = 1.0;
  return model;
}

RequestBatch sample_batch(const PopularityModel& model, int batch_size,
                          std::uint64_t seed) {
  if (batch_size < 0) throw ConfigError("sample_batch: batch size must be >= 0");

  RequestBatch batch;
  batch.seed = seed;
  batch.requests.reserve(batch_size);
  batch.counts.assign(model.n, 0);

  Xoshiro256ss rng(seed);
  for (int r = 0; r < batch_size; ++r) {
    const double u = rng.next_double();
    // First index with cdf > u; cdf.back() == 1.0 > u guarantees a hit.
    const auto it = std::upper_bound(model.cdf.begin(), model.cdf.end(), u);
    const int file = static_cast<int>(it - model.cdf.begin()) + 1;
    batch.requests.push_back(file);
    ++batch.counts[file - 1];
  }
  return batch;
}

}  // namespace cachesim
