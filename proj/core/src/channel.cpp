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

#include "covertfbl/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace covertfbl {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// log2(n)/(2n), the third-order term of the normal approximation.
double half_log2_over_n(std::int64_t n) {
  const double nd = static_cast<double>(n);
  return std::log2(nd) / (2.0 * nd);
}

void require_blocklength(std::int64_t n, const char* who) {
  if (n < 1) throw std::domain_error(std::string(who) + ": n must be >= 1");
}

}  // namespace

ChannelParams::ChannelParams(double sigma_b2, double sigma_w2, double power)
    : sigma_b2(sigma_b2), sigma_w2(sigma_w2), power(power) {
  if (!(sigma_b2 > 0.0) || !std::isfinite(sigma_b2)) {
    throw std::domain_error("ChannelParams: sigma_b2 must be finite and > 0");
  }
  if (!(sigma_w2 > 0.0) || !std::isfinite(sigma_w2)) {
    throw std::domain_error("ChannelParams: sigma_w2 must be finite and > 0");
  }
  if (!(power >= 0.0) || !std::isfinite(power)) {
    throw std::domain_error("ChannelParams: power must be finite and >= 0");
  }
}

CodingPoint::CodingPoint(std::int64_t n, double rate, Probability delta)
    : n(n), rate(rate), delta(delta) {
  if (n < 1) throw std::domain_error("CodingPoint: n must be >= 1");
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw std::domain_error("CodingPoint: rate must be finite and >= 0");
  }
}

double achievable_rate(const ChannelParams& params, std::int64_t n, Probability delta) {
  require_blocklength(n, "achievable_rate");
  const double g = params.gamma_b();
  const double d = delta.value();
  if (g == 0.0) {
    // Dispersion vanishes with the SNR; only the symmetric point delta=1/2
    // (where the dispersion term is exactly zero anyway) defines a rate.
    if (d == 0.5) return half_log2_over_n(n);
    throw std::domain_error("achievable_rate: zero SNR only defines a rate at delta = 1/2");
  }
  if (!(d > 0.0 && d < 1.0)) {
    throw std::domain_error("achievable_rate: delta must lie strictly inside (0, 1)");
  }
  const double one_plus_g = 1.0 + g;
  const double dispersion = g * (g + 2.0) / (one_plus_g * one_plus_g);
  const double nd = static_cast<double>(n);
  return std::log1p(g) / kLn2 - std::sqrt(dispersion / nd) * q_inv(d) / kLn2 +
         half_log2_over_n(n);
}

Probability decoding_error(const ChannelParams& params, std::int64_t n, double rate) {
  require_blocklength(n, "decoding_error");
  if (!std::isfinite(rate)) {
    throw std::domain_error("decoding_error: rate must be finite");
  }
  const double g = params.gamma_b();
  if (g == 0.0) {
    // Limiting behavior: a zero-SNR link carries nothing.
    return Probability(rate > 0.0 ? 1.0 : 0.0);
  }
  const double nd = static_cast<double>(n);
  const double one_plus_g = 1.0 + g;
  const double arg = std::sqrt(nd) * one_plus_g *
                     (std::log1p(g) + std::log(nd) / (2.0 * nd) - rate * kLn2) /
                     std::sqrt(g * (g + 2.0));
  return q_func(arg);
}

double effective_throughput(const CodingPoint& point) {
  return static_cast<double>(point.n) * point.rate * (1.0 - point.delta.value());
}

}  // namespace covertfbl
