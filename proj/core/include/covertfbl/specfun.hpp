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

// Scalar special-function kernel: the Gaussian tail function Q and its
// inverse, log-gamma, and the regularized lower incomplete gamma function.
// These are the only transcendentals the rest of the library needs.  All
// routines are pure double-precision functions; none allocate or keep state,
// so unrestricted concurrent use is safe.

namespace covertfbl {

// A probability. Construction validates 0 <= value <= 1 (and finiteness);
// the implicit conversion back to double keeps arithmetic call sites terse.
class Probability {
 public:
  Probability() = default;
  // Throws std::domain_error unless 0 <= value <= 1.
  explicit Probability(double value);

  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_ = 0.0;
};

// Stopping rule shared by the iterative solvers.  At least one of abs_tol
// and rel_tol must be strictly positive and max_iter must be >= 1;
// validate() enforces this and is called by every consumer.
struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_iter = 200;

  // Throws std::domain_error if the tolerance is unusable.
  void validate() const;
};

// Gaussian upper-tail probability Q(x) = P[Z > x] for standard normal Z,
// evaluated as erfc(x/sqrt(2))/2.  Strictly decreasing; absolute accuracy
// better than 1e-14 over the full double range.  +/-infinity map to the
// limits 0 and 1; NaN is rejected.
Probability q_func(double x);

// Inverse of q_func for p in (0, 1) (exclusive; the endpoints have infinite
// quantiles and are rejected).  A rational approximation supplies the
// initial guess, which Newton steps on q_func polish until
// |q_func(x) - p| <= 1e-15 or the internal iteration cap is reached; the
// round-trip error |q_func(q_inv(p)) - p| stays below 1e-12 even at
// p = 1e-10 and p = 1 - 1e-10.
double q_inv(double p);

// Natural logarithm of the gamma function for n > 0, so that
// exp(ln_gamma(k)) = (k-1)! at positive integers.
double ln_gamma(double n);

// Regularized lower incomplete gamma function
//   P(n, x) = gamma(n, x) / Gamma(n),  n > 0, x >= 0,
// monotone nondecreasing in x with P(n, 0) = 0 and limit 1 as x -> inf.
// Evaluated by the power series for x < n + 1 and by a continued fraction
// for the upper function otherwise, with the common prefactor
// x^n e^{-x} / Gamma(n) assembled in log space so the routine stays finite
// for n up to at least 1e6.  Accuracy is better than 1e-12.
Probability reg_gamma_lower(double n, double x);

}  // namespace covertfbl
