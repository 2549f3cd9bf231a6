// Copyright 2026 The rmplus Authors.
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

#include <random>

#include "rmplus/efg.h"
#include "rmplus/fixedpoint.h"
#include "rmplus/projection.h"
#include "rmplus/stabilized.h"

namespace {

using namespace rmplus;

void BM_ProjectChopped(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 0.5);
  Vec y(d);
  for (double& v : y) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(project_chopped(y));
}
BENCHMARK(BM_ProjectChopped)->Arg(3)->Arg(30)->Arg(300);

void BM_StableRound(benchmark::State& state) {
  const GameSpec g = random_matrix_game(30, 40, 1);
  JointLiftedState s = stable_prmp_init(action_dims(g), 1.0 / 30);
  for (auto _ : state) {
    RoundResult r = stable_prmp_round(s, g, 0.1, 1.0 / 30);
    s = std::move(r.state);
  }
}
BENCHMARK(BM_StableRound);

void BM_SmoothRound(benchmark::State& state) {
  const GameSpec g = random_matrix_game(30, 40, 1);
  JointLiftedState s = smooth_prmp_init(action_dims(g));
  for (auto _ : state) {
    RoundResult r = smooth_prmp_round(s, g, 0.1);
    s = std::move(r.state);
  }
}
BENCHMARK(BM_SmoothRound);

void BM_ExtragradientRound(benchmark::State& state) {
  const GameOperator op = make_game_operator(random_matrix_game(30, 40, 1));
  Vec z = initial_lifted(op.layout);
  for (auto _ : state) z = exrm_round(z, op, 0.1).z_next;
}
BENCHMARK(BM_ExtragradientRound);

void BM_ConceptualRound(benchmark::State& state) {
  const GameOperator op = make_game_operator(random_matrix_game(10, 10, 1));
  const double eta = 1.0 / (2.0 * op.lipschitz);
  Vec z = initial_lifted(op.layout);
  for (auto _ : state) z = conceptual_round(z, op, eta, 1e-10, 1000).z_next;
}
BENCHMARK(BM_ConceptualRound);

void BM_CounterfactualValues(benchmark::State& state) {
  const GameTree tree = state.range(0) == 0 ? build_kuhn(2, 6) : build_liars_dice(2, 2);
  const Vec x = uniform_behavioral(tree);
  for (auto _ : state) benchmark::DoNotOptimize(counterfactual_values(tree, x));
}
BENCHMARK(BM_CounterfactualValues)->Arg(0)->Arg(1);

void BM_PredictiveCfrRound(benchmark::State& state) {
  const GameTree tree = build_kuhn(2, 6);
  CfrState s = predictive_cfr_init(tree);
  for (auto _ : state) s = predictive_cfr_round(s, tree).state;
}
BENCHMARK(BM_PredictiveCfrRound);

}  // namespace

BENCHMARK_MAIN();
