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

#include "covertfbl/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "covertfbl/errors.hpp"

namespace covertfbl {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2*pi)

// Standard normal density.
double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Rational approximation to the standard normal quantile (lower-tail
// convention), after P. J. Acklam's widely reproduced coefficients:
// three branches (lower tail / central / upper tail), relative error
// below 1.2e-9 everywhere on (0, 1).  Serves only as the initial guess
// for the Newton polish in q_inv.
double normal_quantile_guess(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kPLow = 0.02425;

  if (p < kPLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - kPLow) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("Probability: value must lie in [0, 1]");
  }
}

void Tolerance::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !std::isfinite(abs_tol) ||
      !std::isfinite(rel_tol)) {
    throw std::domain_error("Tolerance: abs_tol and rel_tol must be finite and >= 0");
  }
  if (abs_tol == 0.0 && rel_tol == 0.0) {
    throw std::domain_error("Tolerance: at least one of abs_tol, rel_tol must be positive");
  }
  if (max_iter < 1) {
    throw std::domain_error("Tolerance: max_iter must be >= 1");
  }
}

Probability q_func(double x) {
  if (std::isnan(x)) {
    throw std::domain_error("q_func: argument must not be NaN");
  }
  if (std::isinf(x)) {
    return Probability(x > 0.0 ? 0.0 : 1.0);
  }
  return Probability(0.5 * std::erfc(x / kSqrt2));
}

double q_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("q_inv: p must lie strictly inside (0, 1)");
  }
  // q_inv(p) = -PhiInv(p): the upper-tail quantile mirrors the lower-tail
  // one.  Feeding p itself (not 1-p) to the guess keeps full precision for
  // tiny p, where 1-p would round to 1.
  double x = -normal_quantile_guess(p);

  // Newton iterations on Q(x) - p = 0; Q' = -pdf, so the update adds the
  // residual over the density.  One or two steps from the rational guess
  // reach the 1e-15 residual target; the cap only guards pathologies.
  constexpr int kMaxIter = 100;
  constexpr double kResidualTarget = 1e-15;
  for (int i = 0; i < kMaxIter; ++i) {
    const double residual = q_func(x).value() - p;
    if (std::abs(residual) <= kResidualTarget) break;
    const double density = normal_pdf(x);
    if (density <= 0.0) break;  // deep subnormal tail: keep the guess
    x += residual / density;
  }
  return x;
}

double ln_gamma(double n) {
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::domain_error("ln_gamma: argument must be finite and > 0");
  }
  return std::lgamma(n);
}

Probability reg_gamma_lower(double n, double x) {
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::domain_error("reg_gamma_lower: n must be finite and > 0");
  }
  if (std::isnan(x) || x < 0.0) {
    throw std::domain_error("reg_gamma_lower: x must be >= 0");
  }
  if (x == 0.0) return Probability(0.0);
  if (std::isinf(x)) return Probability(1.0);

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxTerms = 1000000;
  // log of the prefactor x^n e^{-x} / Gamma(n); always <= -0.5*ln(2*pi*n)
  // near the transition region, so exp() of it never overflows.
  const double log_prefactor = n * std::log(x) - x - ln_gamma(n);

  if (x < n + 1.0) {
    // Lower series: P(n, x) = prefactor * sum_{k>=0} x^k / (n(n+1)...(n+k)).
    double ap = n;
    double term = 1.0 / n;
    double sum = term;
    for (int k = 0; k < kMaxTerms; ++k) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * kEps) {
        return Probability(std::min(1.0, sum * std::exp(log_prefactor)));
      }
    }
    throw ConvergenceError("reg_gamma_lower: series did not converge");
  }

  // Upper continued fraction (modified Lentz): Q(n, x) = prefactor * CF,
  // then P = 1 - Q.
  constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - n;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxTerms; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - n);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <= kEps) {
      const double upper = h * std::exp(log_prefactor);
      return Probability(std::max(0.0, 1.0 - upper));
    }
  }
  throw ConvergenceError("reg_gamma_lower: continued fraction did not converge");
}

}  // namespace covertfbl
