// Copyright 2026 The catbell Authors
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

#include <cmath>

#include "catbell/bell.hpp"
#include "catbell/experiment.hpp"
#include "catbell/fock_oracle.hpp"
#include "catbell/optimize.hpp"
#include "catbell/states.hpp"

namespace {

using namespace catbell;

const StateSpec kSscs = StateSpec::make(Family::SscsEven, std::sqrt(2.6), 0.4);
const StateSpec kEss = StateSpec::make(Family::EssPlus, std::sqrt(1.3), 0.4);
const StateSpec kSecs = StateSpec::make(Family::SecsPsiMinus, 1.0, -0.3);

void BM_WignerSingle(benchmark::State& state) {
  Complex z(0.3, -0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wigner_scs(kSscs, z));
    z += 1e-9;
  }
}
BENCHMARK(BM_WignerSingle);

void BM_WignerTwoMode(benchmark::State& state) {
  const StateSpec& spec = state.range(0) ? kSecs : kEss;
  Complex a(0.3, -0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wigner_two_mode(spec, a, {-0.1, 0.4}));
    a += 1e-9;
  }
}
BENCHMARK(BM_WignerTwoMode)->Arg(0)->Arg(1);

void BM_HusimiMarginal(benchmark::State& state) {
  Complex a(0.3, -0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(husimi_marginal(kSecs, Mode::A, a));
    a += 1e-9;
  }
}
BENCHMARK(BM_HusimiMarginal);

void BM_BellValue(benchmark::State& state) {
  const StateModel model(kEss);
  const Scheme scheme = static_cast<Scheme>(state.range(0));
  const DisplacementSettings s{{0.1, 0.0}, {-0.3, 0.2}, {0.0, 0.1}, {0.4, -0.1}};
  for (auto _ : state) benchmark::DoNotOptimize(bell_value(model, scheme, s));
}
BENCHMARK(BM_BellValue)
    ->Arg(static_cast<int>(Scheme::ParityChsh))
    ->Arg(static_cast<int>(Scheme::OnOffChsh));

void BM_MaximizeBell(benchmark::State& state) {
  const Scheme scheme = static_cast<Scheme>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_bell(kEss, scheme, {}).value);
}
BENCHMARK(BM_MaximizeBell)
    ->Arg(static_cast<int>(Scheme::ParityChsh))
    ->Arg(static_cast<int>(Scheme::OnOffChsh))
    ->Unit(benchmark::kMillisecond);

void BM_FidelityPhi2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fidelity_phi2(1.02));
}
BENCHMARK(BM_FidelityPhi2)->Unit(benchmark::kMillisecond);

void BM_OracleWigner(benchmark::State& state) {
  const TruncationPolicy policy{static_cast<int>(state.range(0)), 1e-12, 400};
  const FockState psi = std::get<FockState>(build_state(kSscs, policy));
  for (auto _ : state) benchmark::DoNotOptimize(wigner(psi, {0.7, -0.4}, policy));
}
BENCHMARK(BM_OracleWigner)->Arg(80)->Arg(160);

}  // namespace

BENCHMARK_MAIN();
