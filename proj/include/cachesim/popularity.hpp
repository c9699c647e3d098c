#pragma once

#include <cstdint>
#include <vector>

namespace cachesim {

/// Zipf popularity over files 1..n: p_i = p_1 * i^(-beta), with
/// p_1 = (sum_i i^(-beta))^(-1). Immutable after construction and safe to
/// share across threads.
struct PopularityModel {
  int n = 0;
  double beta = 0.0;
  std::vector<double> pmf;  ///< pmf[i-1] = p_i, non-increasing, sums to 1
  std::vector<double> cdf;  ///< running sums of pmf; cdf.back() forced to 1.0

  double p1() const { return pmf.front(); }
  double probability(int file) const { return pmf[file - 1]; }
};

/// Builds the Zipf model. The harmonic normalizer uses compensated (Kahan)
/// summation so the pmf stays normalized to ~1e-15 even at n = 10^6 with
/// beta < 1.
///
/// Throws ConfigError if n < 1 or beta is negative or non-finite.
PopularityModel build_popularity(int n, double beta);

/// One time-slot's worth of i.i.d. requests.
struct RequestBatch {
  std::vector<int> requests;  ///< file ids in [1, n], size = batch size
  std::vector<int> counts;    ///< counts[i-1] = multiplicity of file i
  std::uint64_t seed = 0;     ///< seed the batch was drawn with

  int size() const { return static_cast<int>(requests.size()); }
  int count_of(int file) const { return counts[file - 1]; }
};

/// Draws `batch_size` i.i.d. file ids by inverse-CDF binary search over the
/// model's cumulative array, using xoshiro256** seeded with `seed`. Equal
/// (model, batch_size, seed) triples yield byte-identical batches.
///
/// Throws ConfigError if batch_size < 0.
RequestBatch sample_batch(const PopularityModel& model, int batch_size,
                          std::uint64_t seed);

}  // namespace cachesim
