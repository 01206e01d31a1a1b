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

// The optimization layer: given a block budget of N channel uses and a
// covertness budget epsilon, find the largest admissible transmit power,
// then the rate/error-probability pair maximizing effective throughput.
// Using all N channel uses is optimal (spreading a fixed KL budget over
// more uses buys strictly more total received SNR — see kl_per_snr below),
// so the solvers fix n* = N and optimize power and delta.

#include <cstdint>

#include "covertfbl/channel.hpp"
#include "covertfbl/specfun.hpp"

namespace covertfbl {

// Which covertness constraint the power solver enforces: the KL-divergence
// proxy D <= 2 epsilon^2 (sufficient via Pinsker, analytically tractable)
// or the exact total-error requirement xi >= 1 - epsilon evaluated through
// the incomplete-gamma error rates.
enum class ConstraintMode { kKl, kExact };

// The covertness budget.  The bound 1 - epsilon is only meaningful when it
// keeps the adversary close to blind guessing, so epsilon is restricted to
// (0, 0.5].
struct CovertConstraint {
  double epsilon;
  ConstraintMode mode;

  // Throws std::domain_error unless 0 < epsilon <= 0.5.
  CovertConstraint(double epsilon, ConstraintMode mode);
};

// How a power solver arrived at its answer: plain bisection on a verified
// monotone constraint, or the grid-scan + local-refinement fallback taken
// when the exact total error fails its monotonicity scan.
enum class SolvePath { kBisection, kScanRefine };

// Result of a power solve, with diagnostics: the power itself, iteration
// count, the final constraint residual (relative residual f - target over
// target in KL mode; signed slack xi - (1 - epsilon) in exact mode), and
// which path produced it.
struct PowerSolution {
  double power;
  int iterations;
  double residual;
  SolvePath path;
};

// A complete solved design for block budget N.
struct DesignResult {
  std::int64_t n_star;     // always equals N
  double p_star;           // per-channel-use transmit power
  double r_star;           // optimal rate, bits per channel use (>= 0)
  Probability delta_star;  // optimal decoding error probability
  double eta_star;         // effective throughput, bits per block
  double total_power;      // N * p_star
  int iterations;          // power-solver iterations
  double residual;         // power-solver residual (see PowerSolution)
  ConstraintMode mode;     // which constraint produced p_star
  SolvePath path;          // which solver path produced p_star
};

// Per-channel-use KL divergence seen by the adversary at SNR s:
//   kl_per_use(s) = ln(1 + s) - s/(1 + s),
// strictly increasing from 0, evaluated cancellation-safely near 0.
// Requires s >= 0.
double kl_per_use(double snr);

// KL divergence per unit of adversary SNR, kl_per_use(s)/s.  Under a fixed
// total KL budget b the achievable total received SNR is n*s = b /
// kl_per_snr(s), so the shape of this function decides how the budget is
// best spread: it rises to a single peak and falls, which makes the total
// SNR an (eventually increasing) valley in n and pushes the optimum to
// n = N.  Requires s > 0 (the limit at 0 is 0 but excluded).
double kl_per_snr(double snr);

// Numerator of the derivative of kl_per_snr:
//   slope_num(s) = 2 s^2 + s - (1 + s)^2 ln(1 + s),
// positive below the peak and negative above it; its unique positive root
// locates the peak.  Requires s >= 0.
double kl_per_snr_slope_num(double snr);

// The SNR at which kl_per_snr peaks (~2.16), computed by bisection of
// kl_per_snr_slope_num over [1, 4] until |slope_num| <= tol.abs_tol.
// Throws ConvergenceError if max_iter is exhausted first.
double kl_per_snr_peak_snr(const Tolerance& tol = {});

// Largest per-use power satisfying the KL covertness budget with all N
// channel uses occupied: solves kl_per_use(gamma) = 2 epsilon^2 / N for the
// adversary SNR gamma by bisection (the root is unique by monotonicity;
// the upper bracket doubles from 1 until it encloses) and returns
// P* = sigma_w2 * gamma.  The residual is relative: |f - target|/target <=
// tol.rel_tol on success.  Requires a KL-mode constraint (invalid_argument
// otherwise); throws ConvergenceError on iteration exhaustion.
PowerSolution max_power_kl(std::int64_t max_blocklength, const CovertConstraint& constraint,
                           double sigma_w2, const Tolerance& tol = {});

// Largest per-use power satisfying the exact total-error requirement
// xi(P, N) >= 1 - epsilon.  The KL solution (always feasible, by Pinsker)
// seeds the search; the upper bracket doubles until infeasible; a 200-point
// scan then verifies xi is nonincreasing in P, after which the feasibility
// boundary is bisected to relative width tol.rel_tol.  If the scan detects
// non-monotonicity the solver instead refines around the largest feasible
// grid point and reports path = kScanRefine.  Requires an EXACT-mode
// constraint; throws ConvergenceError on iteration exhaustion.
PowerSolution max_power_exact(std::int64_t max_blocklength, const CovertConstraint& constraint,
                              double sigma_w2, const Tolerance& tol = {});

// The rate/error-probability stage of a design solve on its own, at a
// fixed externally chosen power.
struct RatePoint {
  double r_star;
  Probability delta_star;
  double eta_star;
};

// Maximizes eta(delta) = n R(delta) (1 - delta) (with R clamped at 0) over
// delta in (1e-9, 1 - 1e-9) by golden-section search seeded from a
// 64-point log-spaced delta grid.  Where several delta tie within 1e-12
// relative in eta, the smallest wins, making the output deterministic.
// Requires params.power > 0.
RatePoint optimize_rate(const ChannelParams& params, std::int64_t n);

// Full design solve for block budget N: fixes n* = N, solves the power
// per the constraint mode, then runs optimize_rate at that power.
// Propagates solver errors.
DesignResult optimize_design(std::int64_t max_blocklength, const CovertConstraint& constraint,
                             double sigma_b2, double sigma_w2, const Tolerance& tol = {});

}  // namespace covertfbl
