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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperneg/checkpoint.hpp"
#include "hyperneg/config.hpp"
#include "hyperneg/error.hpp"
#include "hyperneg/experiment.hpp"
#include "hyperneg/hypergraph.hpp"
#include "hyperneg/projection.hpp"
#include "hyperneg/rng.hpp"
#include "hyperneg/sampler.hpp"

namespace fs = std::filesystem;
using namespace hyperneg;

namespace {

constexpr std::uint64_t kSampleStream = 0x5a3;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::size_t workers = 1;
  std::vector<std::string> overrides;
};

void AddCommon(CLI::App* cmd, CommonFlags& flags, bool needs_config) {
  auto* opt = cmd->add_option("--config", flags.config, "Experiment config file");
  if (needs_config) opt->required();
  cmd->add_option("--seed", flags.seed, "Use this single replicate seed");
  cmd->add_option("--out", flags.out, "Output directory")->capture_default_str();
  cmd->add_option("--workers", flags.workers, "Parallel worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--set", flags.overrides, "Override a config key (key=value)");
}

void ApplyOverrides(ExperimentConfig& config, const CommonFlags& flags) {
  for (const auto& kv : flags.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    config.Apply(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (flags.seed) config.seeds = {*flags.seed};
}

ExperimentConfig ResolveConfig(const CommonFlags& flags) {
  ExperimentConfig config;
  if (!flags.config.empty()) config = LoadExperimentConfig(flags.config);
  ApplyOverrides(config, flags);
  config.Validate();
  return config;
}

std::ofstream OpenOutput(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void ReportLoad(const std::string& name, const LoadReport& report) {
  if (report.duplicate_edges || report.repeated_ids || report.empty_lines) {
    std::cerr << name << ": dropped " << report.duplicate_edges << " duplicate hyperedges, "
              << report.repeated_ids << " repeated ids; skipped " << report.empty_lines
              << " empty lines\n";
  }
}

Hypergraph LoadWithReport(const ExperimentConfig& config) {
  LoadReport report;
  Hypergraph g = LoadDataset(config, &report);
  ReportLoad(config.ResolvedDatasetName(), report);
  return g;
}

int RunStats(const CommonFlags& flags, const std::vector<std::string>& paths,
             const std::string& header) {
  ExperimentConfig base;
  if (!flags.config.empty()) base = LoadExperimentConfig(flags.config);
  ApplyOverrides(base, flags);
  base.dataset_name.clear();
  base.Apply("dataset.header", header);
  std::vector<fs::path> inputs(paths.begin(), paths.end());
  if (inputs.empty()) {
    if (base.dataset.empty()) throw ConfigError("stats needs dataset paths or --config");
    inputs.push_back(base.dataset);
  }
  std::ostringstream csv;
  WriteStatsCsvHeader(csv);
  for (const auto& path : inputs) {
    ExperimentConfig config = base;
    config.dataset = path;
    const Hypergraph g = LoadWithReport(config);
    WriteStatsCsvRow(csv, config.ResolvedDatasetName(), ComputeStats(g));
  }
  std::cout << csv.str();
  if (flags.out != ".") {
    auto out = OpenOutput(fs::path(flags.out) / "stats.csv");
    out << csv.str();
  }
  return 0;
}

int RunSplit(const CommonFlags& flags) {
  const ExperimentConfig config = ResolveConfig(flags);
  const Hypergraph g = LoadWithReport(config);
  const Split split = SplitDataset(config, g);
  const fs::path dir(flags.out);
  const std::pair<const char*, const std::vector<std::size_t>*> parts[] = {
      {"train.txt", &split.train}, {"validation.txt", &split.validation}, {"test.txt", &split.test}};
  for (const auto& [name, indices] : parts) {
    auto out = OpenOutput(dir / name);
    WriteHypergraph(out, g.WithEdges(*indices));
  }
  std::cout << "train " << split.train.size() << ", validation " << split.validation.size()
            << ", test " << split.test.size() << " hyperedges written to " << dir.string()
            << "\n";
  return 0;
}

int RunSample(const CommonFlags& flags, const std::string& strategy_name,
              std::optional<std::size_t> count) {
  const ExperimentConfig config = ResolveConfig(flags);
  const SamplerStrategy strategy = ParseStrategy(strategy_name);
  const Hypergraph g = LoadWithReport(config);
  Rng rng = MakeRng(config.seeds.front(), kSampleStream);
  const std::size_t n = count.value_or(g.edge_count());
  const SizeDistribution sizes(g.edges());
  GraphNegatives negatives;
  switch (strategy) {
    case SamplerStrategy::kSNS:
      negatives = SampleSized(g.node_count(), g.index(), sizes, n, rng);
      break;
    case SamplerStrategy::kMNS:
      for (std::size_t i = 0; i < n; ++i) {
        negatives.sets.push_back(
            SampleMotif(g, g.index(), std::max<std::size_t>(sizes.Sample(rng), 2), rng));
      }
      break;
    case SamplerStrategy::kCNS:
      for (std::size_t i = 0; i < n; ++i) negatives.sets.push_back(SampleClique(g, g.index(), rng));
      break;
    default:
      throw ConfigError("sample supports SNS, MNS and CNS; " +
                        std::string(StrategyName(strategy)) + " works in embedding space");
  }
  const Hypergraph out_graph(g.node_count(), negatives.sets);
  auto out = OpenOutput(fs::path(flags.out) / "negatives.txt");
  WriteHypergraph(out, out_graph);
  std::cout << out_graph.edge_count() << " " << StrategyName(strategy)
            << " negatives written to " << (fs::path(flags.out) / "negatives.txt").string()
            << "\n";
  return 0;
}

int RunTrain(const CommonFlags& flags) {
  const ExperimentConfig config = ResolveConfig(flags);
  const Hypergraph g = LoadWithReport(config);
  const TrainingData data = PrepareExperiment(config, g);
  const auto results = Run(config, data, flags.workers);
  WriteRunOutputs(flags.out, config, results);
  WriteResultsHeader(std::cout);
  for (const auto& r : results) WriteResultRow(std::cout, config, r);
  return 0;
}

int RunEvaluate(const CommonFlags& flags, const std::string& checkpoint_path) {
  Checkpoint checkpoint = LoadCheckpoint(checkpoint_path);
  ExperimentConfig config = checkpoint.config;
  ApplyOverrides(config, flags);
  config.Validate();
  const Hypergraph g = LoadWithReport(config);
  const TrainingData data = PrepareExperiment(config, g);
  checkpoint.model.config = config.model;
  RunResult result;
  result.spec = {config.train_sampler, config.alpha, checkpoint.seed};
  result.test = Evaluate(checkpoint.model, data, data.test);
  auto out = OpenOutput(fs::path(flags.out) / "evaluation.csv");
  WriteResultsHeader(out);
  WriteResultRow(out, config, result);
  WriteResultsHeader(std::cout);
  WriteResultRow(std::cout, config, result);
  return 0;
}

int RunSweep(const CommonFlags& flags) {
  const ExperimentConfig config = ResolveConfig(flags);
  const Hypergraph g = LoadWithReport(config);
  const TrainingData data = PrepareExperiment(config, g);
  const SweepReport report = Sweep(config, data, flags.workers);
  const fs::path dir(flags.out);
  {
    auto out = OpenOutput(dir / "sweep.csv");
    WriteSweepCsv(out, config, report);
  }
  {
    auto out = OpenOutput(dir / "results.csv");
    WriteResultsHeader(out);
    for (const auto& r : report.runs) WriteResultRow(out, config, r);
  }
  WriteSweepCsv(std::cout, config, report);
  std::cout << "best alpha " << FormatDouble(report.best_alpha) << " (validation AUC "
            << FormatDouble(report.Best().validation_auc.mean) << ", test AUC "
            << FormatDouble(report.Best().auc.mean) << "); alpha 1 test AUC "
            << FormatDouble(report.At(1.0).auc.mean) << "\n";
  return 0;
}

int RunProject(const CommonFlags& flags, const std::string& checkpoint_path,
               ProjectionOptions options) {
  const Checkpoint checkpoint = LoadCheckpoint(checkpoint_path);
  ExperimentConfig config = checkpoint.config;
  ApplyOverrides(config, flags);
  config.Validate();
  const Hypergraph g = LoadWithReport(config);
  const TrainingData data = PrepareExperiment(config, g);
  options.seed = config.seeds.front();
  const ProjectionResult result =
      Project(checkpoint.model, data.propagation, g.features(), g, options);
  auto out = OpenOutput(fs::path(flags.out) / "projection.csv");
  WriteProjectionCsv(out, result);
  std::cout << "points " << result.classes.size() << ", mean distance to positive centroid: "
            << "random " << FormatDouble(result.random_distance) << ", hns "
            << FormatDouble(result.hard_distance) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperedge prediction with hard negative sampling"};
  app.require_subcommand(1);
  CommonFlags flags;

  auto* stats = app.add_subcommand("stats", "Print hypergraph statistics as CSV");
  AddCommon(stats, flags, false);
  std::vector<std::string> stats_paths;
  std::string header = "auto";
  stats->add_option("paths", stats_paths, "Hyperedge files");
  stats->add_option("--header", header, "Header line: auto, present or absent")
      ->capture_default_str();

  auto* split = app.add_subcommand("split", "Write the train/validation/test split");
  AddCommon(split, flags, true);

  auto* sample = app.add_subcommand("sample", "Dump graph-space negatives");
  AddCommon(sample, flags, true);
  std::string strategy = "SNS";
  std::optional<std::size_t> count;
  sample->add_option("--strategy", strategy, "SNS, MNS or CNS")->capture_default_str();
  sample->add_option("--count", count, "Number of negatives (default: |E|)");

  auto* train = app.add_subcommand("train", "Train and evaluate once per seed");
  AddCommon(train, flags, true);

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a checkpoint on the test split");
  AddCommon(evaluate, flags, false);
  std::string checkpoint;
  evaluate->add_option("--checkpoint", checkpoint, "Checkpoint file")->required();

  auto* sweep = app.add_subcommand("sweep", "Grid search over the injection strength");
  AddCommon(sweep, flags, true);

  auto* project = app.add_subcommand("project", "Export a 2D projection of embeddings");
  AddCommon(project, flags, false);
  ProjectionOptions projection;
  project->add_option("--checkpoint", checkpoint, "Checkpoint file")->required();
  project->add_option("--top-k", projection.top_k, "Highest-hyperdegree nodes to keep")
      ->capture_default_str();
  project->add_option("--alpha", projection.alpha, "Injection strength for HNS points")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  project->add_flag("--enumerate", projection.enumerate,
                    "Also embed every non-hyperedge in the order range");
  project->add_option("--min-order", projection.min_order)->capture_default_str();
  project->add_option("--max-order", projection.max_order)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*stats) return RunStats(flags, stats_paths, header);
    if (*split) return RunSplit(flags);
    if (*sample) return RunSample(flags, strategy, count);
    if (*train) return RunTrain(flags);
    if (*evaluate) return RunEvaluate(flags, checkpoint);
    if (*sweep) return RunSweep(flags);
    if (*project) return RunProject(flags, checkpoint, projection);
  } catch (const Error& e) {
    std::cerr << "error [" << CategoryName(e.category()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
