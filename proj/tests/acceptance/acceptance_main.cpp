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

// Property acceptance checks that need no external data. Prints one PASS or
// FAIL line per criterion and exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperneg/checkpoint.hpp"
#include "hyperneg/experiment.hpp"
#include "hyperneg/metrics.hpp"
#include "hyperneg/projection.hpp"
#include "test_support.hpp"

namespace hyperneg {
namespace {

// Tolerances.
constexpr double kGradientTolerance = 1e-4;
constexpr double kGradientEps = 1e-5;
constexpr double kGradientSeconds = 10.0;
constexpr int kMetricLists = 1000;
constexpr double kMetricSeconds = 5.0;
constexpr double kRowSumTolerance = 1e-9;

int failures = 0;

void Report(const char* id, bool pass, const std::string& what) {
  std::printf("%s criterion %s: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string Fmt(const char* format, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b);
  return buf;
}

void GradientCriterion() {
  const auto start = std::chrono::steady_clock::now();
  const Hypergraph g(8, {{0, 1, 2}, {1, 3}, {2, 3, 4}, {4, 5, 6}, {5, 7}, {0, 6, 7}},
                     testing::RandomMatrix(8, 5, 21));
  ModelConfig config;
  config.encoder.dims = {4, 4};
  config.encoder.bias = true;
  config.aggregator = AggregatorKind::kMaxMin;
  Model model = InitModel(config, g.feature_dim(), 3);
  const Propagation prop(g.incidence(), config.encoder.normalization);
  const RowGroups& positives = g.edges();
  RowGroups negatives;
  for (const NodeSet& s : {NodeSet{0, 3, 5}, NodeSet{1, 6}, NodeSet{2, 5, 7}, NodeSet{1, 4},
                           NodeSet{0, 3}, NodeSet{3, 6, 7}}) {
    negatives.Add(s);
  }
  std::vector<double> labels(positives.size(), 1.0);
  labels.resize(positives.size() + negatives.size(), 0.0);
  const double alpha = 0.3;
  const double l2 = 1e-3;

  const testing::LossFn loss = [&](Tape& tape) {
    Var v = Encode(tape, prop, tape.Constant(g.features()), model.encoder, config.encoder);
    Var pos = Aggregate(tape, v, positives, config.aggregator);
    Var neg = Aggregate(tape, v, negatives, config.aggregator);
    neg = InjectHard(tape, neg, pos, alpha).embeddings;
    Var probs = Classify(tape, tape.ConcatRows(pos, neg), model.classifier);
    std::vector<Var> bound;
    for (const Parameter* p : model.Parameters()) bound.push_back(tape.Bind(*p));
    return PredictionLoss(tape, probs, labels, bound, l2);
  };
  const auto params = model.Parameters();
  const auto check = testing::CheckGradients(loss, params, kGradientEps);
  const double elapsed = Seconds(start);
  Report("1", check.max_relative_error < kGradientTolerance && elapsed < kGradientSeconds,
         "gradient check over " + std::to_string(check.checked) +
             " parameters: " + Fmt("max relative error %.3g (< 1e-4) at ", check.max_relative_error) +
             check.worst + Fmt(", %.2fs (< 10s)", elapsed));
}

void MetricCriterion() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng = MakeRng(2024, 0);
  std::uniform_int_distribution<int> length(2, 10);
  std::uniform_int_distribution<int> level(0, 5);
  std::bernoulli_distribution coin(0.5);
  int lists = 0;
  int mismatches = 0;
  while (lists < kMetricLists) {
    const int n = length(rng);
    std::vector<double> scores(n), labels(n);
    for (int i = 0; i < n; ++i) {
      scores[i] = level(rng) / 5.0;
      labels[i] = coin(rng) ? 1.0 : 0.0;
    }
    const auto p = std::count(labels.begin(), labels.end(), 1.0);
    if (p == 0 || p == n) continue;
    ++lists;
    const RankedResults r(scores, labels);
    const auto want = testing::BruteForceMetrics(scores, labels);
    const bool same = Auc(r) == want.auc && Aupr(r) == want.aupr && Ndcg(r) == want.ndcg &&
                      Mrr(r) == want.mrr;
    mismatches += same ? 0 : 1;
  }
  const double elapsed = Seconds(start);
  Report("2", mismatches == 0 && elapsed < kMetricSeconds,
         std::to_string(kMetricLists) + " random lists vs brute force: " +
             std::to_string(mismatches) + " mismatches" + Fmt(", %.2fs (< 5s)", elapsed));
}

ExperimentConfig SmallConfig() {
  ExperimentConfig config;
  config.dataset = "/acceptance/planted/hyperedges.txt";
  config.model.encoder.dims = {8, 8};
  config.train.epochs = 6;
  config.train.batch_size = 16;
  config.train.learning_rate = 0.01;
  config.seeds = {0, 1};
  config.alphas = {0.0, 0.3};
  return config;
}

void DegeneracyCriterion() {
  const Hypergraph g = testing::PlantedHypergraph(4, 8, 100, 11);
  const ExperimentConfig config = SmallConfig();
  const TrainingData data = PrepareExperiment(config, g);
  bool identical = true;
  std::size_t epochs = 0;
  for (std::uint64_t seed : config.seeds) {
    const RunResult hns = RunOne(config, data, {SamplerStrategy::kHNS, 0.0, seed});
    const RunResult without = RunOne(config, data, {SamplerStrategy::kWithout, std::nullopt, seed});
    identical = identical && hns.state.history.size() == without.state.history.size();
    for (std::size_t e = 0; identical && e < hns.state.history.size(); ++e) {
      identical = hns.state.history[e].loss == without.state.history[e].loss &&
                  hns.state.history[e].validation_auc == without.state.history[e].validation_auc;
    }
    identical = identical && hns.test.auc == without.test.auc &&
                hns.test.aupr == without.test.aupr && hns.test.ndcg == without.test.ndcg &&
                hns.test.mrr == without.test.mrr;
    epochs += hns.state.history.size();
  }
  Report("3", identical,
         "HNS alpha=0 vs Without over " + std::to_string(config.seeds.size()) + " seeds, " +
             std::to_string(epochs) + " epochs: histories and metrics " +
             (identical ? "bit-identical" : "differ"));
}

std::size_t EdgeIndexOf(const Hypergraph& g, const NodeSet& edge) {
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    if (std::equal(edge.begin(), edge.end(), g.edge(j).begin(), g.edge(j).end())) return j;
  }
  return g.edge_count();
}

void HeuristicCriterion() {
  const Hypergraph g = testing::HeuristicExampleGraph();
  Rng rng = MakeRng(0, 0);
  const std::size_t seed = EdgeIndexOf(g, {1, 3, 4});
  const std::size_t neighbor = EdgeIndexOf(g, {4, 5});
  const auto cns = ReplaceWithCommonNeighbor(g, seed, 4, rng);
  const auto mns = GrowMotif(g, seed, 4, rng, [&](std::span<const std::size_t> c) {
    return static_cast<std::size_t>(std::find(c.begin(), c.end(), neighbor) - c.begin());
  });
  auto show = [](const std::optional<NodeSet>& s) {
    if (!s) return std::string("none");
    std::string out = "{";
    for (std::size_t i = 0; i < s->size(); ++i) out += (i ? "," : "") + std::to_string((*s)[i]);
    return out + "}";
  };
  Report("4", cns == NodeSet{1, 2, 3} && mns == NodeSet{1, 3, 4, 5},
         "CNS(e={1,3,4}, v=4) = " + show(cns) + " (want {1,2,3}); MNS({1,3,4} + {4,5}) = " +
             show(mns) + " (want {1,3,4,5})");
}

void RowSumCriterion() {
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const Matrix easy = testing::RandomMatrix(16, 8, 100 + trial, -3.0, 3.0);
    const Matrix pos = testing::RandomMatrix(24, 8, 200 + trial, -3.0, 3.0);
    const HardNegativeBatch batch = SynthesizeHardNegatives(easy, pos, 0.3);
    for (std::size_t r = 0; r < batch.weights.rows(); ++r) {
      double sum = 0.0;
      for (double w : batch.weights.row(r)) sum += w;
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  Report("5 (hns rows)", worst <= kRowSumTolerance,
         Fmt("attention rows sum to 1 within %.3g (<= 1e-9) over 800 rows", worst));
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::map<std::string, std::string> Snapshot(const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    files[entry.path().filename().string()] = ReadFile(entry.path());
  }
  return files;
}

std::map<std::string, std::string> RunPipeline(const std::filesystem::path& dir,
                                               std::size_t workers) {
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const Hypergraph g = testing::PlantedHypergraph(3, 8, 70, 13);
  const ExperimentConfig config = SmallConfig();
  const TrainingData data = PrepareExperiment(config, g);
  WriteRunOutputs(dir, config, Run(config, data, workers));
  {
    std::ofstream out(dir / "sweep.csv", std::ios::binary);
    WriteSweepCsv(out, config, Sweep(config, data, workers));
  }
  const Checkpoint checkpoint = LoadCheckpoint(dir / "checkpoint-seed0.txt");
  ProjectionOptions options;
  options.top_k = 12;
  std::ofstream out(dir / "projection.csv", std::ios::binary);
  WriteProjectionCsv(out, Project(checkpoint.model, data.propagation, g.features(), g,
                                  options));
  out.close();
  return Snapshot(dir);
}

void DeterminismCriterion() {
  const auto base = std::filesystem::temp_directory_path() / "hyperneg_acceptance";
  const auto first = RunPipeline(base / "a", 1);
  const auto second = RunPipeline(base / "b", 1);
  const auto parallel = RunPipeline(base / "c", 2);
  std::filesystem::remove_all(base);
  Report("10", first == second && first == parallel,
         "run/sweep/project outputs (" + std::to_string(first.size()) +
             " files) byte-identical across repeats and worker counts");
}

}  // namespace
}  // namespace hyperneg

int main() {
  using namespace hyperneg;
  const std::pair<const char*, void (*)()> checks[] = {
      {"1", GradientCriterion},   {"2", MetricCriterion},      {"3", DegeneracyCriterion},
      {"4", HeuristicCriterion},  {"5 (hns rows)", RowSumCriterion},
      {"10", DeterminismCriterion},
  };
  for (const auto& [id, check] : checks) {
    try {
      check();
    } catch (const std::exception& e) {
      Report(id, false, std::string("threw: ") + e.what());
    }
  }
  std::printf("%d criterion check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
