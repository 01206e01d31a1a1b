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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "covertfbl/channel.hpp"
#include "covertfbl/detection.hpp"

namespace covertfbl {
namespace {

CovertConstraint kl_budget(double epsilon) {
  return CovertConstraint(epsilon, ConstraintMode::kKl);
}

CovertConstraint exact_budget(double epsilon) {
  return CovertConstraint(epsilon, ConstraintMode::kExact);
}

TEST(CovertConstraint, ValidatesBudget) {
  EXPECT_NO_THROW(kl_budget(0.5));
  EXPECT_NO_THROW(kl_budget(1e-6));
  EXPECT_THROW(kl_budget(0.0), std::domain_error);
  EXPECT_THROW(kl_budget(0.50001), std::domain_error);
  EXPECT_THROW(kl_budget(-0.1), std::domain_error);
}

TEST(KlPerUse, KnownValuesAndShape) {
  EXPECT_DOUBLE_EQ(kl_per_use(0.0), 0.0);
  // ln 2 - 1/2 at unit SNR.
  EXPECT_NEAR(kl_per_use(1.0), 0.19314718055994530942, 1e-16);
  // Leading series behavior at tiny SNR, s^2/2 - 2 s^3/3 + O(s^4): direct
  // evaluation of the defining formula would cancel to noise here.
  const double s = 1e-8;
  const double want = 0.5 * s * s - 2.0 * s * s * s / 3.0;
  EXPECT_NEAR(kl_per_use(s), want, 1e-12 * want);
  double prev = 0.0;
  for (const double snr : {0.01, 0.1, 1.0, 5.0, 50.0}) {
    const double cur = kl_per_use(snr);
    EXPECT_GT(cur, prev) << "snr = " << snr;
    prev = cur;
  }
  EXPECT_THROW(kl_per_use(-1e-9), std::domain_error);
}

TEST(KlPerSnr, PeaksAtTheCriticalSnr) {
  const double peak = kl_per_snr_peak_snr();
  EXPECT_NEAR(peak, 2.1625815870646098349, 1e-9);
  // The named constant from the design analysis, to coarse tolerance.
  EXPECT_NEAR(peak, 2.1626, 1e-3);
  EXPECT_NEAR(kl_per_use(peak), 0.46758602825014755821, 1e-12);
  // Local maximality of kl_per_snr.
  const double at_peak = kl_per_snr(peak);
  EXPECT_GT(at_peak, kl_per_snr(peak - 0.01));
  EXPECT_GT(at_peak, kl_per_snr(peak + 0.01));
  EXPECT_THROW(kl_per_snr(0.0), std::domain_error);
}

TEST(KlPerSnrSlopeNum, FrozenValuesAndSignChange) {
  EXPECT_NEAR(kl_per_snr_slope_num(1.0), 0.22741127776021876233, 1e-13);
  EXPECT_NEAR(kl_per_snr_slope_num(3.0), -1.1807097779182499014, 1e-13);
  EXPECT_GT(kl_per_snr_slope_num(2.0), 0.0);
  EXPECT_LT(kl_per_snr_slope_num(2.3), 0.0);
}

TEST(MaxPowerKl, MatchesFrozenSolutions) {
  const PowerSolution a = max_power_kl(100, kl_budget(0.1), 1.0);
  EXPECT_NEAR(a.power, 0.020269583048493495257, 1e-12);
  EXPECT_LE(std::fabs(a.residual), 1e-9);
  EXPECT_EQ(a.path, SolvePath::kBisection);

  const PowerSolution b = max_power_kl(1000, kl_budget(0.1), 1.0);
  EXPECT_NEAR(b.power, 0.0063513136150189759845, 1e-12);

  // With a full budget at one channel use, the solution sits at the
  // half-nat divergence point.
  const PowerSolution c = max_power_kl(1, kl_budget(0.5), 1.0);
  EXPECT_NEAR(c.power, 2.3144458236686756536, 1e-10);
}

TEST(MaxPowerKl, SaturatesTheBudget) {
  for (const std::int64_t n : {10, 100, 1000}) {
    for (const double eps : {0.05, 0.1, 0.3}) {
      const PowerSolution sol = max_power_kl(n, kl_budget(eps), 1.0);
      const double budget = 2.0 * eps * eps;
      const double kl = kl_divergence(ChannelParams(1.0, 1.0, sol.power), n);
      EXPECT_NEAR(kl, budget, 1e-8 * budget) << "n = " << n << ", eps = " << eps;
    }
  }
}

TEST(MaxPowerKl, ScalesWithNoiseAndRejectsWrongMode) {
  const double base = max_power_kl(100, kl_budget(0.1), 1.0).power;
  const double doubled = max_power_kl(100, kl_budget(0.1), 2.0).power;
  // The constraint depends only on the received SNR, so power scales with
  // the adversary's noise floor.
  EXPECT_NEAR(doubled, 2.0 * base, 1e-9 * doubled);
  EXPECT_THROW(max_power_kl(100, exact_budget(0.1), 1.0), std::invalid_argument);
  EXPECT_THROW(max_power_kl(0, kl_budget(0.1), 1.0), std::domain_error);
  EXPECT_THROW(max_power_kl(100, kl_budget(0.1), 0.0), std::domain_error);
}

TEST(MaxPowerExact, MatchesFrozenSolutions) {
  struct Case {
    std::int64_t n;
    double eps;
    double want;
  };
  const Case cases[] = {
      {100, 0.10, 0.025472346206},  {300, 0.10, 0.014620016948},
      {100, 0.05, 0.012630929536},  {100, 0.20, 0.052020464950},
      {200, 0.10, 0.017937624145},  {1000, 0.10, 0.007979857898},
  };
  for (const Case& c : cases) {
    const PowerSolution sol = max_power_exact(c.n, exact_budget(c.eps), 1.0);
    EXPECT_NEAR(sol.power, c.want, 2e-11) << "N = " << c.n << ", eps = " << c.eps;
    EXPECT_LE(std::fabs(sol.residual), 1e-9) << "N = " << c.n << ", eps = " << c.eps;
  }
}

TEST(MaxPowerExact, SitsOnTheConstraintBoundary) {
  const std::int64_t n = 200;
  const double eps = 0.1;
  const PowerSolution sol = max_power_exact(n, exact_budget(eps), 1.0);
  const double at = total_error(ChannelParams(1.0, 1.0, sol.power), n).xi;
  EXPECT_NEAR(at, 1.0 - eps, 1e-8);
  // Any more power and the adversary's total error drops below the floor.
  const double beyond = total_error(ChannelParams(1.0, 1.0, sol.power * 1.01), n).xi;
  EXPECT_LT(beyond, 1.0 - eps);
  EXPECT_THROW(max_power_exact(100, kl_budget(0.1), 1.0), std::invalid_argument);
}

TEST(MaxPowerExact, DominatesTheKlSolution) {
  // The divergence budget binds harder than the total-error floor it
  // implies, so the exact solver always tolerates at least as much power.
  for (const std::int64_t n : {100, 300}) {
    for (const double eps : {0.05, 0.1, 0.2}) {
      const double exact = max_power_exact(n, exact_budget(eps), 1.0).power;
      const double kl = max_power_kl(n, kl_budget(eps), 1.0).power;
      EXPECT_GE(exact, kl) << "N = " << n << ", eps = " << eps;
    }
  }
}

TEST(OptimizeRate, FindsTheInteriorOptimum) {
  // At the exact-mode power limits, the error-probability optimum matches
  // the frozen solutions and moves left as the block budget grows.
  const ChannelParams p200(1.0, 1.0, 0.017937624145);
  const RatePoint a = optimize_rate(p200, 200);
  EXPECT_NEAR(a.delta_star.value(), 0.322702, 1e-4);

  const ChannelParams p1000(1.0, 1.0, 0.007979857898);
  const RatePoint b = optimize_rate(p1000, 1000);
  EXPECT_NEAR(b.delta_star.value(), 0.265079, 1e-4);
  EXPECT_LT(b.delta_star.value(), a.delta_star.value());

  // Interior maximality against nearby error probabilities.
  const auto eta_at = [&](double d) {
    const double r = std::max(achievable_rate(p200, 200, Probability(d)), 0.0);
    return effective_throughput(CodingPoint(200, r, Probability(d)));
  };
  EXPECT_GE(a.eta_star, eta_at(a.delta_star.value() - 0.02));
  EXPECT_GE(a.eta_star, eta_at(a.delta_star.value() + 0.02));
  EXPECT_GT(a.eta_star, 0.0);
}

TEST(OptimizeRate, ReportsConsistentThroughput) {
  const ChannelParams params(1.0, 1.0, 0.0142764972);
  const RatePoint point = optimize_rate(params, 200);
  // The reported throughput is the objective evaluated at the reported
  // operating point — identical arithmetic, identical value.
  EXPECT_EQ(point.eta_star,
            effective_throughput(CodingPoint(200, point.r_star, point.delta_star)));
  EXPECT_GE(point.r_star, 0.0);
  EXPECT_THROW(optimize_rate(ChannelParams(1.0, 1.0, 0.0), 200), std::domain_error);
}

TEST(OptimizeDesign, MatchesFrozenKlTable) {
  struct Row {
    std::int64_t n;
    double p_star;
    double eta_star;
    double delta_star;
  };
  const Row table[] = {
      {100, 0.020269583, 3.324562, 0.34554},   {200, 0.014276497, 4.295900, 0.32623},
      {400, 0.010067029, 5.580595, 0.30595},   {800, 0.007104529, 7.324663, 0.28381},
      {1600, 0.005016712, 9.744502, 0.25951},  {3200, 0.003543883, 13.160385, 0.23331},
      {6400, 0.002504172, 18.044787, 0.20592},
  };
  for (const Row& row : table) {
    const DesignResult result = optimize_design(row.n, kl_budget(0.1), 1.0, 1.0);
    EXPECT_EQ(result.n_star, row.n);
    EXPECT_NEAR(result.p_star, row.p_star, 1e-8) << "N = " << row.n;
    EXPECT_NEAR(result.eta_star, row.eta_star, 1e-5) << "N = " << row.n;
    EXPECT_NEAR(result.delta_star.value(), row.delta_star, 1e-4) << "N = " << row.n;
    EXPECT_DOUBLE_EQ(result.total_power, static_cast<double>(row.n) * result.p_star);
    EXPECT_EQ(result.mode, ConstraintMode::kKl);
    EXPECT_EQ(result.path, SolvePath::kBisection);
    EXPECT_EQ(result.eta_star, effective_throughput(CodingPoint(
                                   result.n_star, result.r_star, result.delta_star)));
  }
}

TEST(OptimizeDesign, AsymptoticTrends) {
  // Power thins out, total block energy and throughput grow, and the
  // optimal error probability drifts toward zero as the budget grows.
  std::vector<DesignResult> results;
  for (const std::int64_t n : {100, 200, 400, 800, 1600, 3200, 6400}) {
    results.push_back(optimize_design(n, kl_budget(0.1), 1.0, 1.0));
  }
  for (std::size_t i = 1; i < results.size(); ++i) {
    EXPECT_LT(results[i].p_star, results[i - 1].p_star);
    EXPECT_GT(results[i].total_power, results[i - 1].total_power);
    EXPECT_GT(results[i].eta_star, results[i - 1].eta_star);
    EXPECT_LT(results[i].delta_star.value(), results[i - 1].delta_star.value());
  }
}

TEST(OptimizeDesign, ExactModeCarriesItsOwnDiagnostics) {
  const DesignResult result = optimize_design(100, exact_budget(0.1), 1.0, 1.0);
  EXPECT_EQ(result.mode, ConstraintMode::kExact);
  EXPECT_NEAR(result.p_star, 0.025472346206, 2e-11);
  EXPECT_GT(result.eta_star, optimize_design(100, kl_budget(0.1), 1.0, 1.0).eta_star);
}

TEST(OptimizeDesign, SingleUseBudget) {
  const DesignResult result = optimize_design(1, kl_budget(0.5), 1.0, 1.0);
  EXPECT_EQ(result.n_star, 1);
  EXPECT_NEAR(result.p_star, 2.3144458236686756536, 1e-10);
  EXPECT_EQ(result.eta_star, effective_throughput(CodingPoint(
                                 result.n_star, result.r_star, result.delta_star)));
}

TEST(OptimizeDesign, RejectsBadParameters) {
  EXPECT_THROW(optimize_design(0, kl_budget(0.1), 1.0, 1.0), std::domain_error);
  EXPECT_THROW(optimize_design(100, kl_budget(0.1), 0.0, 1.0), std::domain_error);
  EXPECT_THROW(optimize_design(100, kl_budget(0.1), 1.0, -1.0), std::domain_error);
}

// Mechanics behind fixing the operating blocklength at the full budget: the
// adversary-side energy n * gamma_w(n) under the per-n divergence budget is
// valley-shaped in n, so its maximum over [1, N] lands at the endpoint N.
TEST(BlocklengthChoice, EnergySequenceIsValleyShapedWithEndpointMaximum) {
  const double eps = 0.1;
  std::vector<double> energy;
  energy.reserve(64);
  for (std::int64_t n = 1; n <= 64; ++n) {
    const double gamma = max_power_kl(n, kl_budget(eps), 1.0).power;
    energy.push_back(static_cast<double>(n) * gamma);
  }
  // One descent phase (possibly empty) followed by one ascent phase.
  std::size_t turn = 1;
  while (turn < energy.size() && energy[turn] < energy[turn - 1]) ++turn;
  for (std::size_t i = turn; i < energy.size(); ++i) {
    EXPECT_GT(energy[i], energy[i - 1]) << "n = " << i + 1;
  }
  // Brute-force argmax over [1, N] sits at N, matching the designed point.
  for (const std::int64_t cap : {8, 64}) {
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < static_cast<std::size_t>(cap); ++i) {
      if (energy[i] > energy[argmax]) argmax = i;
    }
    EXPECT_EQ(static_cast<std::int64_t>(argmax) + 1, cap);
    EXPECT_EQ(optimize_design(cap, kl_budget(eps), 1.0, 1.0).n_star, cap);
  }
}

}  // namespace
}  // namespace covertfbl
