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

#include "hyperneg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "hyperneg/checkpoint.hpp"
#include "hyperneg/error.hpp"

namespace hyperneg {
namespace {

std::string AlphaField(const RunSpec& spec) {
  return Injects(spec.strategy) && spec.alpha ? FormatDouble(*spec.alpha) : "NA";
}

void WriteMeanStd(std::ostream& out, const MeanStd& s) {
  out << ',' << FormatDouble(s.mean) << ',' << FormatDouble(s.std);
}

}  // namespace

Hypergraph LoadDataset(const ExperimentConfig& config, LoadReport* report) {
  return LoadHypergraph(config.dataset, config.LoadOptionsFor(), report);
}

Split SplitDataset(const ExperimentConfig& config, const Hypergraph& g) {
  return SplitEdges(g.edge_count(), config.split, config.split_seed);
}

TrainingData PrepareExperiment(const ExperimentConfig& config, const Hypergraph& g) {
  return PrepareTrainingData(g, SplitDataset(config, g), config.model.encoder.normalization,
                             config.validation_sampler, config.split_seed);
}

RunResult RunOne(const ExperimentConfig& config, const TrainingData& data,
                 const RunSpec& spec) {
  const SamplerConfig sampler = config.SamplerFor(spec.strategy, spec.alpha, spec.seed);
  Model model = InitModel(config.model, data.graph->feature_dim(), spec.seed);
  RunResult result;
  result.spec = spec;
  if (Injects(spec.strategy)) result.spec.alpha = sampler.alpha;
  result.state = Train(data, std::move(model), sampler, config.TrainFor(spec.seed));
  result.test = Evaluate(result.state.best, data, data.test);
  return result;
}

void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<RunResult> RunMany(const ExperimentConfig& config, const TrainingData& data,
                               std::span<const RunSpec> specs, std::size_t workers) {
  std::vector<RunResult> results(specs.size());
  ParallelFor(specs.size(), workers,
              [&](std::size_t i) { results[i] = RunOne(config, data, specs[i]); });
  return results;
}

std::vector<RunResult> Run(const ExperimentConfig& config, const TrainingData& data,
                           std::size_t workers) {
  std::vector<RunSpec> specs;
  for (std::uint64_t seed : config.seeds) {
    specs.push_back({config.train_sampler, config.alpha, seed});
  }
  return RunMany(config, data, specs, workers);
}

MeanStd Summarize(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

const AlphaSummary& SweepReport::At(double alpha) const {
  for (const auto& s : alphas) {
    if (s.alpha == alpha) return s;
  }
  throw InvalidArgument("alpha " + FormatDouble(alpha) + " was not part of the sweep");
}

SweepReport Sweep(const ExperimentConfig& config, const TrainingData& data,
                  std::size_t workers) {
  config.Validate();
  if (!Injects(config.train_sampler)) {
    throw ConfigError("sweep needs an injecting sampler.train (HNS or Random), not " +
                      std::string(StrategyName(config.train_sampler)));
  }
  std::vector<double> grid = config.alphas;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<double> alphas = grid;
  const bool endpoint_in_grid = grid.back() == 1.0;
  if (!endpoint_in_grid) alphas.push_back(1.0);

  std::vector<RunSpec> specs;
  for (double a : alphas) {
    for (std::uint64_t seed : config.seeds) specs.push_back({config.train_sampler, a, seed});
  }
  SweepReport report;
  report.runs = RunMany(config, data, specs, workers);

  const std::size_t replicates = config.seeds.size();
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    std::vector<double> val, auc, aupr, ndcg, mrr;
    for (std::size_t s = 0; s < replicates; ++s) {
      const RunResult& r = report.runs[k * replicates + s];
      val.push_back(r.state.best_validation_auc);
      auc.push_back(r.test.auc);
      aupr.push_back(r.test.aupr);
      ndcg.push_back(r.test.ndcg);
      mrr.push_back(r.test.mrr);
    }
    AlphaSummary summary;
    summary.alpha = alphas[k];
    summary.in_grid = k < grid.size();
    summary.replicates = replicates;
    summary.validation_auc = Summarize(val);
    summary.auc = Summarize(auc);
    summary.aupr = Summarize(aupr);
    summary.ndcg = Summarize(ndcg);
    summary.mrr = Summarize(mrr);
    report.alphas.push_back(summary);
  }
  double best = -1.0;
  for (const auto& s : report.alphas) {
    if (s.in_grid && s.validation_auc.mean > best) {
      best = s.validation_auc.mean;
      report.best_alpha = s.alpha;
    }
  }
  return report;
}

std::string EncoderLabel(const ExperimentConfig& config) {
  return config.model.encoder.Tag() + "-" + std::string(AggregatorName(config.model.aggregator));
}

std::string SamplerLabel(const ExperimentConfig& config, SamplerStrategy strategy) {
  return std::string(StrategyName(strategy)) + "@T+" +
         std::string(StrategyName(config.validation_sampler)) + "@V";
}

void WriteResultsHeader(std::ostream& out) {
  out << "dataset,encoder,sampler,alpha,seed,auc,aupr,ndcg,mrr\n";
}

void WriteResultRow(std::ostream& out, const ExperimentConfig& config,
                    const RunResult& result) {
  out << config.ResolvedDatasetName() << ',' << EncoderLabel(config) << ','
      << SamplerLabel(config, result.spec.strategy) << ',' << AlphaField(result.spec) << ','
      << result.spec.seed << ',' << FormatDouble(result.test.auc) << ','
      << FormatDouble(result.test.aupr) << ',' << FormatDouble(result.test.ndcg) << ','
      << FormatDouble(result.test.mrr) << '\n';
}

void WriteSweepCsv(std::ostream& out, const ExperimentConfig& config,
                   const SweepReport& report) {
  out << "dataset,encoder,sampler,alpha,in_grid,best,replicates,val_auc_mean,val_auc_std,"
         "auc_mean,auc_std,aupr_mean,aupr_std,ndcg_mean,ndcg_std,mrr_mean,mrr_std\n";
  for (const auto& s : report.alphas) {
    out << config.ResolvedDatasetName() << ',' << EncoderLabel(config) << ','
        << SamplerLabel(config, config.train_sampler) << ',' << FormatDouble(s.alpha) << ','
        << (s.in_grid ? 1 : 0) << ',' << (s.in_grid && s.alpha == report.best_alpha ? 1 : 0)
        << ',' << s.replicates;
    WriteMeanStd(out, s.validation_auc);
    WriteMeanStd(out, s.auc);
    WriteMeanStd(out, s.aupr);
    WriteMeanStd(out, s.ndcg);
    WriteMeanStd(out, s.mrr);
    out << '\n';
  }
}

void WriteRunOutputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                     std::span<const RunResult> results) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "results.csv", std::ios::binary);
  if (!csv) throw IoError("cannot write " + (dir / "results.csv").string());
  WriteResultsHeader(csv);
  for (const auto& r : results) {
    WriteResultRow(csv, config, r);
    Checkpoint checkpoint;
    checkpoint.config = config;
    checkpoint.config.train_sampler = r.spec.strategy;
    if (r.spec.alpha) checkpoint.config.alpha = *r.spec.alpha;
    checkpoint.seed = r.spec.seed;
    checkpoint.best_epoch = r.state.best_epoch;
    checkpoint.validation_auc = r.state.best_validation_auc;
    checkpoint.model = r.state.best;
    const std::string suffix = "seed" + std::to_string(r.spec.seed);
    SaveCheckpoint(dir / ("checkpoint-" + suffix + ".txt"), checkpoint);
    std::ofstream history(dir / ("history-" + suffix + ".csv"), std::ios::binary);
    if (!history) throw IoError("cannot write history for " + suffix);
    WriteHistoryCsv(history, r.state.history);
  }
}

}  // namespace hyperneg
