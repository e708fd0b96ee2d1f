// Copyright 2026 The hyperneg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "hyperneg/aggregator.hpp"
#include "hyperneg/encoder.hpp"
#include "hyperneg/rng.hpp"
#include "hyperneg/sampler.hpp"
#include "hyperneg/trainer.hpp"

namespace hyperneg {
namespace {

Hypergraph RandomHypergraph(std::size_t nodes, std::size_t edges, std::uint64_t seed) {
  Rng rng = MakeRng(seed, 0);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(nodes - 1));
  std::uniform_int_distribution<std::size_t> order(2, 6);
  std::vector<std::vector<NodeId>> out;
  for (std::size_t j = 0; j < edges; ++j) {
    std::vector<NodeId> e(order(rng));
    for (auto& v : e) v = node(rng);
    out.push_back(std::move(e));
  }
  return Hypergraph(nodes, out);
}

Matrix Uniform(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng = MakeRng(seed, 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (double& x : m.values()) x = u(rng);
  return m;
}

void BM_Propagation(benchmark::State& state) {
  const auto nodes = static_cast<std::size_t>(state.range(0));
  const Hypergraph g = RandomHypergraph(nodes, nodes * 4, 1);
  const Propagation prop(g.incidence(), Normalization::kSymmetricDegree);
  const Matrix x = Uniform(nodes, 64, 2);
  for (auto _ : state) benchmark::DoNotOptimize(prop.Apply(x));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(g.incidence().nonzeros() * 64));
}
BENCHMARK(BM_Propagation)->Arg(1 << 10)->Arg(1 << 13);

void BM_HardNegatives(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  const Matrix easy = Uniform(batch, 64, 3);
  const Matrix pos = Uniform(batch, 64, 4);
  for (auto _ : state) benchmark::DoNotOptimize(SynthesizeHardNegatives(easy, pos, 0.3));
}
BENCHMARK(BM_HardNegatives)->Arg(64)->Arg(256)->Arg(1024);

void BM_MaxMin(benchmark::State& state) {
  const Hypergraph g = RandomHypergraph(4096, 16384, 5);
  const Matrix v = Uniform(4096, 64, 6);
  for (auto _ : state) {
    Tape tape;
    benchmark::DoNotOptimize(
        tape.value(Aggregate(tape, tape.Constant(v), g.edges(), AggregatorKind::kMaxMin)));
  }
}
BENCHMARK(BM_MaxMin);

void BM_TrainEpoch(benchmark::State& state) {
  const Hypergraph g = RandomHypergraph(512, 2048, 7);
  const Split split = SplitEdges(g.edge_count(), {}, 0);
  const TrainingData data = PrepareTrainingData(g, split, Normalization::kSymmetricDegree,
                                                SamplerStrategy::kSNS, 0);
  ModelConfig model;
  model.encoder.dims = {64, 64};
  TrainConfig train;
  train.epochs = 1;
  SamplerConfig sampler;
  sampler.strategy = SamplerStrategy::kHNS;
  sampler.alpha = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Train(data, InitModel(model, g.feature_dim(), 0), sampler, train));
  }
}
BENCHMARK(BM_TrainEpoch)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace hyperneg

BENCHMARK_MAIN();
