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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperneg/config.hpp"
#include "hyperneg/hypergraph.hpp"
#include "hyperneg/metrics.hpp"
#include "hyperneg/sampler.hpp"
#include "hyperneg/trainer.hpp"

namespace hyperneg {

Hypergraph LoadDataset(const ExperimentConfig& config, LoadReport* report = nullptr);
Split SplitDataset(const ExperimentConfig& config, const Hypergraph& g);
// Split plus validation/test candidates. Validation and test negatives
// depend only on split.seed, so every replicate sees the same candidates.
TrainingData PrepareExperiment(const ExperimentConfig& config, const Hypergraph& g);

struct RunSpec {
  SamplerStrategy strategy = SamplerStrategy::kSNS;
  // Injection strength; ignored unless the strategy injects.
  std::optional<double> alpha;
  std::uint64_t seed = 0;
};

struct RunResult {
  RunSpec spec;
  EvalReport test;
  TrainState state;
};

RunResult RunOne(const ExperimentConfig& config, const TrainingData& data,
                 const RunSpec& spec);

// Runs fn(0..count-1) on at most `workers` threads. The first exception (by
// index) is rethrown after all workers join.
void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& fn);

std::vector<RunResult> RunMany(const ExperimentConfig& config, const TrainingData& data,
                               std::span<const RunSpec> specs, std::size_t workers);

// One row per replicate seed, using sampler.train and sampler.alpha.
std::vector<RunResult> Run(const ExperimentConfig& config, const TrainingData& data,
                           std::size_t workers);

struct MeanStd {
  double mean = 0.0;
  // Sample standard deviation; 0 for a single replicate.
  double std = 0.0;
};

MeanStd Summarize(std::span<const double> values);

struct AlphaSummary {
  double alpha = 0.0;
  bool in_grid = true;
  std::size_t replicates = 0;
  MeanStd validation_auc;
  MeanStd auc;
  MeanStd aupr;
  MeanStd ndcg;
  MeanStd mrr;
};

struct SweepReport {
  std::vector<AlphaSummary> alphas;
  // Grid alpha with the highest mean validation AUC; ties go to the
  // smaller alpha.
  double best_alpha = 0.0;
  std::vector<RunResult> runs;

  const AlphaSummary& At(double alpha) const;
  const AlphaSummary& Best() const { return At(best_alpha); }
};

// Runs every (alpha, seed) cell of the grid plus the alpha = 1 endpoint.
SweepReport Sweep(const ExperimentConfig& config, const TrainingData& data,
                  std::size_t workers);

// Encoder tag plus aggregator, e.g. "k2-h64-sym-replace-maxmin".
std::string EncoderLabel(const ExperimentConfig& config);
// Column label for the sampler: "<train>@T+<val>@V".
std::string SamplerLabel(const ExperimentConfig& config, SamplerStrategy strategy);

// dataset,encoder,sampler,alpha,seed,auc,aupr,ndcg,mrr
void WriteResultsHeader(std::ostream& out);
void WriteResultRow(std::ostream& out, const ExperimentConfig& config,
                    const RunResult& result);

void WriteSweepCsv(std::ostream& out, const ExperimentConfig& config,
                   const SweepReport& report);

// Writes results.csv plus checkpoint-seed<N>.txt and history-seed<N>.csv
// for each run into `dir`.
void WriteRunOutputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                     std::span<const RunResult> results);

}  // namespace hyperneg
