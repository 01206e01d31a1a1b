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

#pragma once

// Independent stochastic oracle for the detection math: simulates the
// adversary's n complex observations under both hypotheses, applies the
// radiometer test, and estimates the error rates with binomial standard
// errors.  Everything is deterministic given the seed — trials are cut into
// fixed-size batches, each batch derives its own generator substream from
// (seed, batch index), and reduction is an order-independent sum of counts,
// so results are bit-identical no matter how many threads run the batches.

#include <cstdint>

#include "covertfbl/channel.hpp"
#include "covertfbl/specfun.hpp"

namespace covertfbl {

// SplitMix64 (Steele, Lea & Flood's 64-bit finalizer-based generator).
// Used only to expand seeds into generator state and to derive batch
// substreams; one next() call per state word.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// xoshiro256++ 1.0 (Blackman & Vigna), seeded through SplitMix64.  Fast,
// 256-bit state, passes BigCrush; the library's only trial-level generator.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);
  std::uint64_t next();
  // Uniform double in [0, 1), 53 random bits.
  double next_double();

 private:
  std::uint64_t s_[4];
};

// One simulation request: scenario parameters, number of observations per
// trial, trial count, and the seed that makes the run reproducible.
struct McConfig {
  ChannelParams params;
  std::int64_t n;
  std::int64_t trials;
  std::uint64_t seed;

  // Throws std::domain_error unless n >= 1 and trials >= 1.
  void validate() const;
};

// Empirical error rates with their binomial standard errors
// sqrt(p(1-p)/trials).
struct McEstimate {
  Probability p_false_hat;
  Probability p_miss_hat;
  double stderr_false;
  double stderr_miss;
  std::int64_t trials;
};

// Sample moments of the test statistic T (average received power) under
// both hypotheses.  E[T] = sigma_w2 with the signal absent and
// sigma_w2 + P with it present; Var[T] = sigma_w2^2/n absent.
struct StatMoments {
  double mean_h0;
  double mean_h1;
  double var_h0;
  double var_h1;
  std::int64_t trials;
};

// Runs config.trials independent trials.  Each trial draws n circularly
// symmetric complex Gaussian noise samples (variance sigma_w2, split evenly
// across real and imaginary parts, via Box-Muller from uniform pairs) for
// the signal-absent record, and a fresh noise-plus-signal record (signal
// samples i.i.d. complex Gaussian of variance power) for the signal-present
// one; T is compared against the radiometer threshold for each.  Requires
// power > 0 so the threshold exists.
McEstimate simulate_detection(const McConfig& config);

// Same sampling scheme, but accumulates mean and (unbiased) variance of T
// under each hypothesis instead of exceedance counts.  power = 0 is allowed
// here — the two hypotheses then coincide and the moments should agree up
// to sampling error.
StatMoments simulate_statistic_moments(const McConfig& config);

}  // namespace covertfbl
