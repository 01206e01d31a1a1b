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

#include "covertfbl/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "covertfbl/detection.hpp"
#include "covertfbl/errors.hpp"
#include "kl_terms.hpp"

namespace covertfbl {

namespace {

// Golden-section interior ratio: (sqrt(5) - 1) / 2.
constexpr double kGoldenRatio = 0.61803398874989484820;
// Final bracket width for the delta optimization.
constexpr double kDeltaInterval = 1e-9;
// Open-interval clamp for delta: the objective is evaluated strictly
// inside (kDeltaFloor, 1 - kDeltaFloor).
constexpr double kDeltaFloor = 1e-9;
// Seeding grid for the delta optimization: log-spaced points covering the
// whole admissible interval, dense near 0 where the throughput surface can
// be extremely flat.
constexpr int kDeltaGridPoints = 64;
// Powers scanned by the exact-mode monotonicity check.
constexpr int kScanPoints = 200;
// Relative eta slack inside which two delta candidates count as tied (the
// smaller delta then wins, for deterministic output).
constexpr double kEtaTieRel = 1e-12;

void require_blocklength(std::int64_t n) {
  if (n < 1) throw std::domain_error("design: max_blocklength must be >= 1");
}

void require_sigma(double sigma_w2) {
  if (!(sigma_w2 > 0.0) || !std::isfinite(sigma_w2)) {
    throw std::domain_error("design: sigma_w2 must be finite and > 0");
  }
}

// Total error of the radiometer at per-use power p over n uses.
double xi_at_power(double sigma_w2, std::int64_t n, double p) {
  const ChannelParams params(1.0, sigma_w2, p);
  return false_positive_rate(params, n).value() + miss_detection_rate(params, n).value();
}

}  // namespace

CovertConstraint::CovertConstraint(double epsilon, ConstraintMode mode)
    : epsilon(epsilon), mode(mode) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw std::domain_error("CovertConstraint: epsilon must lie in (0, 0.5]");
  }
}

double kl_per_use(double snr) {
  if (!(snr >= 0.0) || !std::isfinite(snr)) {
    throw std::domain_error("kl_per_use: snr must be finite and >= 0");
  }
  return detail::ln1p_minus_frac(snr);
}

double kl_per_snr(double snr) {
  if (!(snr > 0.0) || !std::isfinite(snr)) {
    throw std::domain_error("kl_per_snr: snr must be finite and > 0 (the limit at 0 is 0)");
  }
  return kl_per_use(snr) / snr;
}

double kl_per_snr_slope_num(double snr) {
  if (!(snr >= 0.0) || !std::isfinite(snr)) {
    throw std::domain_error("kl_per_snr_slope_num: snr must be finite and >= 0");
  }
  const double one_plus = 1.0 + snr;
  return 2.0 * snr * snr + snr - one_plus * one_plus * std::log1p(snr);
}

double kl_per_snr_peak_snr(const Tolerance& tol) {
  tol.validate();
  double lo = 1.0;
  double hi = 4.0;
  // slope_num is positive below the peak and negative above; [1, 4]
  // brackets the sign change.
  double f_lo = kl_per_snr_slope_num(lo);
  if (!(f_lo > 0.0) || !(kl_per_snr_slope_num(hi) < 0.0)) {
    throw std::logic_error("kl_per_snr_peak_snr: bracket [1, 4] lost its sign change");
  }
  for (int i = 0; i < tol.max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = kl_per_snr_slope_num(mid);
    if (std::abs(f_mid) <= tol.abs_tol) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError("kl_per_snr_peak_snr: bisection exhausted max_iter");
}

PowerSolution max_power_kl(std::int64_t max_blocklength, const CovertConstraint& constraint,
                           double sigma_w2, const Tolerance& tol) {
  require_blocklength(max_blocklength);
  require_sigma(sigma_w2);
  tol.validate();
  if (constraint.mode != ConstraintMode::kKl) {
    throw std::invalid_argument("max_power_kl: constraint mode must be KL");
  }

  // Spend the whole KL budget evenly over all N uses: solve
  // kl_per_use(gamma) = 2 eps^2 / N for the adversary SNR gamma.
  const double target =
      2.0 * constraint.epsilon * constraint.epsilon / static_cast<double>(max_blocklength);
  const double residual_cap = tol.rel_tol > 0.0 ? tol.rel_tol * target : tol.abs_tol;

  int iterations = 0;
  double hi = 1.0;
  while (kl_per_use(hi) < target) {
    hi *= 2.0;
    if (++iterations > tol.max_iter) {
      throw ConvergenceError("max_power_kl: failed to bracket the root");
    }
  }
  double lo = 0.0;
  double gamma = hi;
  double residual = kl_per_use(gamma) - target;
  while (std::abs(residual) > residual_cap) {
    if (++iterations > tol.max_iter) {
      throw ConvergenceError("max_power_kl: bisection exhausted max_iter");
    }
    gamma = 0.5 * (lo + hi);
    residual = kl_per_use(gamma) - target;
    if (residual < 0.0) {
      lo = gamma;
    } else {
      hi = gamma;
    }
  }
  return PowerSolution{sigma_w2 * gamma, iterations, residual / target, SolvePath::kBisection};
}

PowerSolution max_power_exact(std::int64_t max_blocklength, const CovertConstraint& constraint,
                              double sigma_w2, const Tolerance& tol) {
  require_blocklength(max_blocklength);
  require_sigma(sigma_w2);
  tol.validate();
  if (constraint.mode != ConstraintMode::kExact) {
    throw std::invalid_argument("max_power_exact: constraint mode must be EXACT");
  }

  const double target = 1.0 - constraint.epsilon;
  // The KL solution is always feasible here (its total error is Pinsker-
  // bounded below by exactly 1 - epsilon), so it seeds the bracket.
  const CovertConstraint kl_constraint(constraint.epsilon, ConstraintMode::kKl);
  const double p_feasible = max_power_kl(max_blocklength, kl_constraint, sigma_w2, tol).power;

  int iterations = 0;
  double p_hi = p_feasible;
  while (xi_at_power(sigma_w2, max_blocklength, p_hi) >= target) {
    p_hi *= 2.0;
    if (++iterations > tol.max_iter) {
      throw ConvergenceError("max_power_exact: failed to bracket the feasibility boundary");
    }
  }

  // The bisection below assumes the total error falls as power rises; that
  // is an observed property of the exact error rates, not a proven one, so
  // scan before trusting it.
  const bool monotone = xi_nonincreasing_in_power(sigma_w2, max_blocklength, p_hi, kScanPoints);

  double lo;  // feasible
  double hi;  // infeasible
  SolvePath path;
  if (monotone) {
    lo = p_feasible;
    hi = p_hi;
    path = SolvePath::kBisection;
  } else {
    // Fallback: locate the last feasible point of the scan grid and refine
    // the crossing inside the adjacent cell.
    path = SolvePath::kScanRefine;
    int last_feasible = 0;  // grid index; 0 stands for power -> 0+, always feasible
    for (int i = 1; i <= kScanPoints; ++i) {
      const double p = p_hi * static_cast<double>(i) / static_cast<double>(kScanPoints);
      if (xi_at_power(sigma_w2, max_blocklength, p) >= target) last_feasible = i;
    }
    lo = p_hi * static_cast<double>(std::max(last_feasible, 1)) / static_cast<double>(kScanPoints);
    if (last_feasible == 0 || xi_at_power(sigma_w2, max_blocklength, lo) < target) {
      // Even the first grid point is infeasible; refine inside (0, p_1].
      lo = p_hi / static_cast<double>(kScanPoints) * 1e-6;
    }
    hi = p_hi * static_cast<double>(std::min(last_feasible + 1, kScanPoints)) /
         static_cast<double>(kScanPoints);
    if (hi <= lo) hi = p_hi;
  }

  const double width_cap = std::max(tol.rel_tol * hi, tol.abs_tol);
  while (hi - lo > width_cap) {
    if (++iterations > tol.max_iter) {
      throw ConvergenceError("max_power_exact: bisection exhausted max_iter");
    }
    const double mid = 0.5 * (lo + hi);
    if (xi_at_power(sigma_w2, max_blocklength, mid) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double slack = xi_at_power(sigma_w2, max_blocklength, lo) - target;
  return PowerSolution{lo, iterations, slack, path};
}

RatePoint optimize_rate(const ChannelParams& params, std::int64_t n) {
  require_blocklength(n);
  if (!(params.power > 0.0)) {
    throw std::domain_error("optimize_rate: power must be > 0");
  }

  // Throughput as a function of the decoding error probability, with the
  // rate clamped at zero (negative values of the approximation carry no
  // operational meaning).
  const auto eta_at = [&](double d) {
    const double rate = std::max(achievable_rate(params, n, Probability(d)), 0.0);
    return effective_throughput(CodingPoint(n, rate, Probability(d)));
  };

  // Seed with a log-spaced grid over the admissible open interval, then
  // golden-section the bracket around the best grid point.  The grid guards
  // against the flat eta == 0 region near delta -> 0 at low power, where an
  // unseeded section search could stall on a plateau.
  const double log_lo = std::log(kDeltaFloor);
  const double log_hi = std::log(1.0 - kDeltaFloor);
  std::vector<double> grid(kDeltaGridPoints);
  int best_index = 0;
  double best_eta = -1.0;
  for (int i = 0; i < kDeltaGridPoints; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(kDeltaGridPoints - 1);
    const double d = std::exp(log_lo + t * (log_hi - log_lo));
    grid[i] = std::clamp(d, kDeltaFloor, 1.0 - kDeltaFloor);
    const double eta = eta_at(grid[i]);
    if (eta > best_eta) {
      best_eta = eta;
      best_index = i;
    }
  }
  double a = grid[std::max(best_index - 1, 0)];
  double b = grid[std::min(best_index + 1, kDeltaGridPoints - 1)];

  // Golden-section search for the interior maximum of eta over [a, b].
  double x1 = b - kGoldenRatio * (b - a);
  double x2 = a + kGoldenRatio * (b - a);
  double f1 = eta_at(x1);
  double f2 = eta_at(x2);
  while (b - a > kDeltaInterval) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGoldenRatio * (b - a);
      f2 = eta_at(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGoldenRatio * (b - a);
      f1 = eta_at(x1);
    }
  }
  const double d_section = 0.5 * (a + b);
  const double eta_section = eta_at(d_section);

  // Deterministic tie-breaking: among candidates within 1e-12 relative of
  // the best eta, take the smallest delta.
  double delta_star = d_section;
  const double tie_band = kEtaTieRel * std::max(eta_section, best_eta);
  if (best_eta > eta_section + tie_band ||
      (std::abs(best_eta - eta_section) <= tie_band && grid[best_index] < d_section)) {
    delta_star = grid[best_index];
  }

  const double r_star = std::max(achievable_rate(params, n, Probability(delta_star)), 0.0);
  const CodingPoint star_point(n, r_star, Probability(delta_star));
  return RatePoint{r_star, Probability(delta_star), effective_throughput(star_point)};
}

DesignResult optimize_design(std::int64_t max_blocklength, const CovertConstraint& constraint,
                             double sigma_b2, double sigma_w2, const Tolerance& tol) {
  require_blocklength(max_blocklength);
  if (!(sigma_b2 > 0.0) || !std::isfinite(sigma_b2)) {
    throw std::domain_error("optimize_design: sigma_b2 must be finite and > 0");
  }

  const PowerSolution power = constraint.mode == ConstraintMode::kKl
                                  ? max_power_kl(max_blocklength, constraint, sigma_w2, tol)
                                  : max_power_exact(max_blocklength, constraint, sigma_w2, tol);

  const ChannelParams params(sigma_b2, sigma_w2, power.power);
  const RatePoint point = optimize_rate(params, max_blocklength);

  DesignResult result{};
  result.n_star = max_blocklength;
  result.p_star = power.power;
  result.r_star = point.r_star;
  result.delta_star = point.delta_star;
  result.eta_star = point.eta_star;
  result.total_power = static_cast<double>(max_blocklength) * power.power;
  result.iterations = power.iterations;
  result.residual = power.residual;
  result.mode = constraint.mode;
  result.path = power.path;
  return result;
}

}  // namespace covertfbl
