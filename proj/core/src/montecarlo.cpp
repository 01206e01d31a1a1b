// Copyright 2026 The covertfbl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "covertfbl/montecarlo.hpp"

#include <cmath>
#include <cstddef>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

#include "covertfbl/detection.hpp"

namespace covertfbl {

namespace {

constexpr double kTwoPi = 6.2831853071795864769;
// Weyl increment of SplitMix64, reused to derive batch substream seeds.
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;
// Trials per batch.  Fixed (never derived from thread count) so that the
// batch -> substream mapping, and therefore every drawn sample, is
// identical no matter how many workers execute the batches.
constexpr std::int64_t kBatchTrials = 8192;

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// One circularly symmetric complex Gaussian sample of total variance
// `var`, via Box-Muller: radius from u1 in (0, 1], phase from u2 in
// [0, 1); each component carries var/2.
struct Cx {
  double re;
  double im;
};

inline Cx cscg(Xoshiro256pp& rng, double var) {
  const double u1 = (static_cast<double>(rng.next() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-var * std::log(u1));
  return Cx{radius * std::cos(kTwoPi * u2), radius * std::sin(kTwoPi * u2)};
}

// Generator for one batch: every batch owns an independent substream keyed
// by (seed, batch index), so trial b of batch k sees the same randomness in
// every run and under every thread count.
inline Xoshiro256pp batch_rng(std::uint64_t seed, std::int64_t batch) {
  return Xoshiro256pp(seed ^ (static_cast<std::uint64_t>(batch + 1) * kGoldenGamma));
}

// Per-batch accumulation shared by both simulation entry points.
struct BatchTotals {
  std::int64_t false_alarms = 0;
  std::int64_t misses = 0;
  double sum_t0 = 0.0;
  double sum_t1 = 0.0;
  double sumsq_t0 = 0.0;
  double sumsq_t1 = 0.0;
};

BatchTotals run_batch(const McConfig& config, std::int64_t batch, double threshold) {
  Xoshiro256pp rng = batch_rng(config.seed, batch);
  const std::int64_t first = batch * kBatchTrials;
  const std::int64_t count = std::min(kBatchTrials, config.trials - first);
  const double noise_var = config.params.sigma_w2;
  const double signal_var = config.params.power;
  const double inv_n = 1.0 / static_cast<double>(config.n);

  BatchTotals totals;
  for (std::int64_t t = 0; t < count; ++t) {
    // Signal-absent record: n noise samples.
    double acc0 = 0.0;
    for (std::int64_t i = 0; i < config.n; ++i) {
      const Cx z = cscg(rng, noise_var);
      acc0 += z.re * z.re + z.im * z.im;
    }
    // Signal-present record: fresh noise plus an independent signal sample
    // per observation.
    double acc1 = 0.0;
    for (std::int64_t i = 0; i < config.n; ++i) {
      const Cx z = cscg(rng, noise_var);
      const Cx s = cscg(rng, signal_var);
      const double re = z.re + s.re;
      const double im = z.im + s.im;
      acc1 += re * re + im * im;
    }
    const double t0 = acc0 * inv_n;
    const double t1 = acc1 * inv_n;
    if (t0 >= threshold) ++totals.false_alarms;
    if (t1 < threshold) ++totals.misses;
    totals.sum_t0 += t0;
    totals.sum_t1 += t1;
    totals.sumsq_t0 += t0 * t0;
    totals.sumsq_t1 += t1 * t1;
  }
  return totals;
}

// Runs all batches, possibly concurrently, and reduces their totals in
// batch-index order (so even the floating-point sums are reproducible).
std::vector<BatchTotals> run_batches(const McConfig& config, double threshold) {
  const std::int64_t batches = (config.trials + kBatchTrials - 1) / kBatchTrials;
  std::vector<BatchTotals> totals(static_cast<std::size_t>(batches));
  const unsigned hw = std::thread::hardware_concurrency();
  const std::int64_t workers =
      std::min<std::int64_t>(batches, hw == 0 ? 1 : static_cast<std::int64_t>(hw));
  if (workers <= 1) {
    for (std::int64_t b = 0; b < batches; ++b) totals[static_cast<std::size_t>(b)] = run_batch(config, b, threshold);
    return totals;
  }
  std::vector<std::future<void>> futures;
  futures.reserve(static_cast<std::size_t>(workers));
  for (std::int64_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (std::int64_t b = w; b < batches; b += workers) {
        totals[static_cast<std::size_t>(b)] = run_batch(config, b, threshold);
      }
    }));
  }
  for (auto& f : futures) f.get();
  return totals;
}

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += kGoldenGamma);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
  SplitMix64 expander(seed);
  for (auto& word : s_) word = expander.next();
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256pp::next_double() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

void McConfig::validate() const {
  if (n < 1) throw std::domain_error("McConfig: n must be >= 1");
  if (trials < 1) throw std::domain_error("McConfig: trials must be >= 1");
}

McEstimate simulate_detection(const McConfig& config) {
  config.validate();
  // Throws for power = 0, per the threshold's domain.
  const double threshold = radiometer_threshold(config.params);
  const std::vector<BatchTotals> totals = run_batches(config, threshold);

  std::int64_t false_alarms = 0;
  std::int64_t misses = 0;
  for (const BatchTotals& batch : totals) {
    false_alarms += batch.false_alarms;
    misses += batch.misses;
  }
  const double trials = static_cast<double>(config.trials);
  const double p_false = static_cast<double>(false_alarms) / trials;
  const double p_miss = static_cast<double>(misses) / trials;

  McEstimate estimate{};
  estimate.p_false_hat = Probability(p_false);
  estimate.p_miss_hat = Probability(p_miss);
  estimate.stderr_false = std::sqrt(p_false * (1.0 - p_false) / trials);
  estimate.stderr_miss = std::sqrt(p_miss * (1.0 - p_miss) / trials);
  estimate.trials = config.trials;
  return estimate;
}

StatMoments simulate_statistic_moments(const McConfig& config) {
  config.validate();
  // The moments need no threshold, so power = 0 is fine here; the sentinel
  // never classifies anything.
  const std::vector<BatchTotals> totals = run_batches(config, 0.0);

  double sum0 = 0.0, sum1 = 0.0, sumsq0 = 0.0, sumsq1 = 0.0;
  for (const BatchTotals& batch : totals) {
    sum0 += batch.sum_t0;
    sum1 += batch.sum_t1;
    sumsq0 += batch.sumsq_t0;
    sumsq1 += batch.sumsq_t1;
  }
  const double trials = static_cast<double>(config.trials);
  StatMoments moments{};
  moments.mean_h0 = sum0 / trials;
  moments.mean_h1 = sum1 / trials;
  if (config.trials > 1) {
    moments.var_h0 = (sumsq0 - trials * moments.mean_h0 * moments.mean_h0) / (trials - 1.0);
    moments.var_h1 = (sumsq1 - trials * moments.mean_h1 * moments.mean_h1) / (trials - 1.0);
    moments.var_h0 = std::max(moments.var_h0, 0.0);
    moments.var_h1 = std::max(moments.var_h1, 0.0);
  }
  moments.trials = config.trials;
  return moments;
}

}  // namespace covertfbl
