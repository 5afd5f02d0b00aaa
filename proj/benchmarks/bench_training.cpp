/* Copyright 2026 The resqnn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include <vector>

#include "resqnn/datagen.hpp"
#include "resqnn/network.hpp"
#include "resqnn/qmath.hpp"
#include "resqnn/rng.hpp"
#include "resqnn/training.hpp"

namespace {

using resqnn::CMatrix;
using resqnn::HyperParams;
using resqnn::NetworkSpec;
using resqnn::PerceptronSet;
using resqnn::PureState;
using resqnn::Rng;
using resqnn::TrainingPair;

struct Fixture {
  NetworkSpec spec;
  PerceptronSet params;
  std::vector<TrainingPair> set;
  PureState input;
};

Fixture make_fixture(const char* text, int pairs) {
  Fixture f;
  f.spec = resqnn::parse_spec(text);
  Rng rng(12345);
  f.params = PerceptronSet::random_init(f.spec, rng);
  f.set = resqnn::make_noisy_pairs(f.spec.widths.front(), f.spec.widths.back(), pairs, rng);
  f.input = resqnn::random_pure_state(f.spec.widths.front(), rng);
  return f;
}

void BM_feedforward(benchmark::State& state) {
  const Fixture f = make_fixture("2,3~,4~,2", 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(resqnn::feedforward(f.input, f.spec, f.params).first);
  }
}
BENCHMARK(BM_feedforward);

void BM_layer_channel(benchmark::State& state) {
  const Fixture f = make_fixture("3,3,3", 1);
  const CMatrix rho = f.input * f.input.adjoint();
  for (auto _ : state) {
    benchmark::DoNotOptimize(resqnn::layer_channel(rho, 1, f.params));
  }
}
BENCHMARK(BM_layer_channel);

void BM_k_matrix_all(benchmark::State& state) {
  const Fixture f = make_fixture("2,3~,2", 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(resqnn::k_matrix_all(f.spec, f.params, f.set, 1.0));
  }
}
BENCHMARK(BM_k_matrix_all);

void BM_train_round(benchmark::State& state) {
  const Fixture f = make_fixture("2,3~,4~,2", 10);
  HyperParams hp;
  hp.eta = 1.0 / 9.0;
  hp.eps = 0.1;
  hp.rounds = 1;
  hp.seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(resqnn::train(f.spec, f.set, hp));
  }
}
BENCHMARK(BM_train_round);

}  // namespace

BENCHMARK_MAIN();
