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

#include <benchmark/benchmark.h>

#include "covertfbl/channel.hpp"
#include "covertfbl/design.hpp"
#include "covertfbl/detection.hpp"
#include "covertfbl/montecarlo.hpp"
#include "covertfbl/specfun.hpp"

namespace covertfbl {
namespace {

void BM_QInv(benchmark::State& state) {
  double p = 1e-9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_inv(p));
    p = p < 0.4 ? p * 1.9 : 1e-9;  // walk the domain
  }
}
BENCHMARK(BM_QInv);

void BM_RegGammaLower(benchmark::State& state) {
  const double n = static_cast<double>(state.range(0));
  const double x = 0.97 * n;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reg_gamma_lower(n, x).value());
  }
}
BENCHMARK(BM_RegGammaLower)->Arg(10)->Arg(1000)->Arg(100000);

void BM_AchievableRate(benchmark::State& state) {
  const ChannelParams params(1.0, 1.0, 0.02);
  for (auto _ : state) {
    benchmark::DoNotOptimize(achievable_rate(params, 200, Probability(0.3)));
  }
}
BENCHMARK(BM_AchievableRate);

void BM_TotalError(benchmark::State& state) {
  const ChannelParams params(1.0, 1.0, 0.02);
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(total_error(params, n).xi);
  }
}
BENCHMARK(BM_TotalError)->Arg(100)->Arg(10000);

void BM_MaxPowerKl(benchmark::State& state) {
  const CovertConstraint constraint(0.1, ConstraintMode::kKl);
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_power_kl(n, constraint, 1.0).power);
  }
}
BENCHMARK(BM_MaxPowerKl)->Arg(100)->Arg(6400);

void BM_MaxPowerExact(benchmark::State& state) {
  const CovertConstraint constraint(0.1, ConstraintMode::kExact);
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_power_exact(n, constraint, 1.0).power);
  }
}
BENCHMARK(BM_MaxPowerExact)->Arg(100)->Arg(1000);

void BM_OptimizeDesign(benchmark::State& state) {
  const CovertConstraint constraint(0.1, ConstraintMode::kKl);
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_design(n, constraint, 1.0, 1.0).eta_star);
  }
}
BENCHMARK(BM_OptimizeDesign)->Arg(100)->Arg(1600);

void BM_SimulateDetection(benchmark::State& state) {
  const McConfig config{ChannelParams(1.0, 1.0, 1.0), state.range(0), 10000, 42};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_detection(config).p_false_hat.value());
  }
}
BENCHMARK(BM_SimulateDetection)->Arg(1)->Arg(100);

}  // namespace
}  // namespace covertfbl

BENCHMARK_MAIN();
