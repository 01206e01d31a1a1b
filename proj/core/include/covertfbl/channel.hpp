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

// Finite-blocklength coding math for the transmitter->receiver link: the
// normal-approximation achievable rate as a function of (SNR, n, delta),
// its exact algebraic inverse delta(SNR, n, R), and the effective
// throughput eta = n R (1 - delta).  All functions are pure.

#include <cstdint>

#include "covertfbl/specfun.hpp"

namespace covertfbl {

// The AWGN scenario parameters: noise power at the intended receiver
// (sigma_b2), noise power at the adversary's receiver (sigma_w2), and the
// per-channel-use transmit power.  SNRs are derived, not stored.
struct ChannelParams {
  double sigma_b2;
  double sigma_w2;
  double power;

  // Throws std::domain_error unless sigma_b2 > 0, sigma_w2 > 0, power >= 0,
  // all finite.
  ChannelParams(double sigma_b2, double sigma_w2, double power);

  // SNR at the intended receiver.
  double gamma_b() const { return power / sigma_b2; }
  // SNR at the adversary.
  double gamma_w() const { return power / sigma_w2; }
};

// One operating point of the coded link: blocklength, rate in bits per
// channel use, and block decoding error probability.
struct CodingPoint {
  std::int64_t n;
  double rate;
  Probability delta;

  // Throws std::domain_error unless n >= 1 and rate >= 0 (finite).
  CodingPoint(std::int64_t n, double rate, Probability delta);
};

// Normal-approximation achievable rate in bits per channel use at
// blocklength n and decoding error probability delta:
//
//   R = log2(1 + g) - sqrt(g(g+2) / (n (1+g)^2)) * Qinv(delta)/ln 2
//       + log2(n) / (2n),       g = gamma_b.
//
// The value may be negative for small n or SNR; it is returned raw and
// callers clamp (the design optimizer needs the unclamped surface to see
// where the feasible region begins).  Requires delta in (0, 1).  At
// gamma_b = 0 the dispersion vanishes and only delta = 1/2 defines a rate
// (log2(n)/(2n)); any other delta is a domain error.
double achievable_rate(const ChannelParams& params, std::int64_t n, Probability delta);

// Exact algebraic inverse of achievable_rate: the decoding error
// probability that makes the normal approximation hold with equality,
//
//   delta = Q( sqrt(n) (1+g) (ln(1+g) + ln(n)/(2n) - R ln 2) / sqrt(g(g+2)) ).
//
// Any finite rate is accepted, including negative ones, so the identity
// decoding_error(achievable_rate(delta)) == delta holds over the whole
// rate surface.  At gamma_b = 0 the limiting values apply: delta = 1 for
// rate > 0 (nothing can be carried) and delta = 0 for rate = 0.
Probability decoding_error(const ChannelParams& params, std::int64_t n, double rate);

// Effective throughput in bits per block: eta = n * rate * (1 - delta).
double effective_throughput(const CodingPoint& point);

}  // namespace covertfbl
