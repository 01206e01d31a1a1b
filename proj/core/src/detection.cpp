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

#include "covertfbl/detection.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kl_terms.hpp"

namespace covertfbl {

namespace {

void require_blocklength(std::int64_t n, const char* who) {
  if (n < 1) throw std::domain_error(std::string(who) + ": n must be >= 1");
}

}  // namespace

double radiometer_threshold(const ChannelParams& params) {
  if (!(params.power > 0.0)) {
    throw std::domain_error(
        "radiometer_threshold: undefined at power = 0 (limiting value is sigma_w2)");
  }
  const double s2 = params.sigma_w2;
  // (P + s2) s2 / P * ln((P + s2)/s2); the log as log1p(P/s2) for accuracy
  // at small P.  ln x lies strictly between (x-1)/x and x-1, which is
  // exactly the statement s2 < threshold < P + s2.
  return (params.power + s2) * s2 / params.power * std::log1p(params.power / s2);
}

Probability false_positive_rate(const ChannelParams& params, std::int64_t n) {
  require_blocklength(n, "false_positive_rate");
  const double threshold = radiometer_threshold(params);
  const double nd = static_cast<double>(n);
  return Probability(1.0 - reg_gamma_lower(nd, nd * threshold / params.sigma_w2).value());
}

Probability miss_detection_rate(const ChannelParams& params, std::int64_t n) {
  require_blocklength(n, "miss_detection_rate");
  const double threshold = radiometer_threshold(params);
  const double nd = static_cast<double>(n);
  return reg_gamma_lower(nd, nd * threshold / (params.power + params.sigma_w2));
}

double kl_divergence(const ChannelParams& params, std::int64_t n) {
  require_blocklength(n, "kl_divergence");
  if (params.power == 0.0) return 0.0;  // identical receive laws
  return static_cast<double>(n) * detail::ln1p_minus_frac(params.gamma_w());
}

double pinsker_lower_bound(double kl) {
  if (!(kl >= 0.0) || !std::isfinite(kl)) {
    throw std::domain_error("pinsker_lower_bound: kl must be finite and >= 0");
  }
  return 1.0 - std::sqrt(0.5 * kl);
}

DetectionReport total_error(const ChannelParams& params, std::int64_t n) {
  DetectionReport report{};
  report.threshold = radiometer_threshold(params);
  report.p_false = false_positive_rate(params, n);
  report.p_miss = miss_detection_rate(params, n);
  report.xi = report.p_false.value() + report.p_miss.value();
  report.kl = kl_divergence(params, n);
  report.pinsker_bound = pinsker_lower_bound(report.kl);
  return report;
}

bool xi_nonincreasing_in_power(double sigma_w2, std::int64_t n, double p_hi, int points) {
  require_blocklength(n, "xi_nonincreasing_in_power");
  if (!(sigma_w2 > 0.0) || !(p_hi > 0.0) || points < 2) {
    throw std::domain_error("xi_nonincreasing_in_power: need sigma_w2 > 0, p_hi > 0, points >= 2");
  }
  constexpr double kSlack = 1e-12;  // roundoff allowance on each comparison
  double previous_xi = 2.0;         // xi is bounded by 2, so the first point always passes
  for (int i = 1; i <= points; ++i) {
    const double p = p_hi * static_cast<double>(i) / static_cast<double>(points);
    // sigma_b2 is irrelevant to the adversary's statistic; any valid value does.
    const ChannelParams params(1.0, sigma_w2, p);
    const double xi =
        false_positive_rate(params, n).value() + miss_detection_rate(params, n).value();
    if (xi > previous_xi + kSlack) return false;
    previous_xi = xi;
  }
  return true;
}

}  // namespace covertfbl
