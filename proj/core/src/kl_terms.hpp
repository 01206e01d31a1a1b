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

// Internal helper shared by the detection and design translation units;
// not installed and not part of the public API.

#include <cmath>

namespace covertfbl::detail {

// ln(1+g) - g/(1+g), the per-channel-use KL divergence between the
// adversary's two receive laws at SNR g.  The direct form loses all
// precision for small g (both terms ~g agree to O(g^2)); substituting
// u = g/(1+g) gives ln(1+g) - u = -ln(1-u) - u = sum_{k>=2} u^k/k, an
// all-positive series that keeps full relative precision.  The series is
// used for u < 1/2 (g < 1) and the direct form beyond, where no
// cancellation remains.
inline double ln1p_minus_frac(double g) {
  const double u = g / (1.0 + g);
  if (u < 0.5) {
    double term = 0.5 * u * u;  // u^2/2
    double sum = term;
    for (int k = 3; k < 200; ++k) {
      term *= u * static_cast<double>(k - 1) / static_cast<double>(k);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return sum;
  }
  return std::log1p(g) - u;
}

}  // namespace covertfbl::detail
