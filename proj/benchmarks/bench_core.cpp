// Copyright 2026 The qafair Authors
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

#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "qafair/embed.hpp"
#include "qafair/evolve.hpp"
#include "qafair/io.hpp"
#include "qafair/model.hpp"
#include "qafair/pt.hpp"

namespace {

using namespace qafair;

const std::string kModels = QAFAIR_MODELS_DIR;

IsingModel toy_embedded(double jf) {
  const auto source = load_model(kModels + "/matsuda5.json");
  const auto tmpl = load_embedding(kModels + "/matsuda5_embedded.json");
  return apply_embedding(source, tmpl.with_chain_strength(jf)).model;
}

IsingModel random_model(int n) {
  std::mt19937 rng(17);
  std::bernoulli_distribution coin(0.5);
  std::vector<Coupling> cs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) cs.push_back({i, j, coin(rng) ? 1.0 : -1.0});
    }
  }
  return IsingModel(n, cs);
}

void BM_EvolveEmbedded(benchmark::State& state) {
  const auto model = toy_embedded(1.0);
  const double tau = static_cast<double>(state.range(0));
  const auto schedule = AnnealSchedule::with_default_steps(tau);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(model, schedule));
  state.counters["steps"] = static_cast<double>(schedule.steps);
}
BENCHMARK(BM_EvolveEmbedded)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ApplyHamiltonian(benchmark::State& state) {
  const auto model = random_model(static_cast<int>(state.range(0)));
  const AnnealingHamiltonian h(model);
  const auto psi = initial_state(model.num_spins());
  std::vector<Amplitude> out(psi.dimension());
  for (auto _ : state) {
    h.apply(0.5, psi.amplitudes(), out, 0.0);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(psi.dimension()));
}
BENCHMARK(BM_ApplyHamiltonian)->DenseRange(6, 18, 4);

void BM_PerturbativeProbabilities(benchmark::State& state) {
  const auto model = toy_embedded(0.5);
  for (auto _ : state) {
    const PerturbationSetup setup(model);
    benchmark::DoNotOptimize(perturbative_probabilities(setup));
  }
}
BENCHMARK(BM_PerturbativeProbabilities);

void BM_EnumerateGroundStates(benchmark::State& state) {
  const auto model = random_model(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ground_states(model));
}
BENCHMARK(BM_EnumerateGroundStates)->DenseRange(8, 20, 4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
